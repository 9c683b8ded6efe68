#pragma once

#include <spincorr/gellmann.hpp>
#include <spincorr/linalg.hpp>

#include <array>
#include <cmath>

namespace spincorr {

// General SU(2) element: a rotation mixing the two levels followed by a
// relative phase, U = [[cos f1, -e^{-i f2} sin f1], [e^{i f2} sin f1, cos f1]]
// * diag(e^{i f3}, e^{-i f3}).
inline cmat su2_matrix(double f1, double f2, double f3) {
  cmat u(2, 2);
  const double c = std::cos(f1), s = std::sin(f1);
  u(0, 0) = c;
  u(0, 1) = -std::exp(-iu * f2) * s;
  u(1, 0) = std::exp(iu * f2) * s;
  u(1, 1) = c;
  u.col(0) *= std::exp(iu * f3);
  u.col(1) *= std::exp(-iu * f3);
  return u;
}

// Exact derivative of su2_matrix in its j-th parameter. Differencing the
// matrix itself costs eight digits; these stay at machine precision, which
// the tiny spectral minors downstream depend on.
inline cmat su2_matrix_d(double f1, double f2, double f3, int j) {
  if (j == 2) {
    cmat u = su2_matrix(f1, f2, f3);
    u.col(0) *= iu;
    u.col(1) *= -iu;
    return u;
  }
  cmat u(2, 2);
  const double c = std::cos(f1), s = std::sin(f1);
  if (j == 0) {
    u(0, 0) = -s;
    u(0, 1) = -std::exp(-iu * f2) * c;
    u(1, 0) = std::exp(iu * f2) * c;
    u(1, 1) = -s;
  } else {
    u(0, 0) = 0.0;
    u(0, 1) = iu * std::exp(-iu * f2) * s;
    u(1, 0) = iu * std::exp(iu * f2) * s;
    u(1, 1) = 0.0;
  }
  u.col(0) *= std::exp(iu * f3);
  u.col(1) *= std::exp(-iu * f3);
  return u;
}

// Interior box of the SU(2) parameter region used for encoding.
inline std::array<std::pair<double, double>, 3> su2_param_box() {
  const double pi = std::acos(-1.0);
  return {{{0.0, pi / 2}, {0.0, 2 * pi}, {0.0, pi / 2}}};
}

// exp(i g phi) for one generator, using that every non-diagonal generator g
// here satisfies g^3 = g.
inline cmat su4_factor_of_generator(int gen, double phi) {
  const cmat& g = su4_generators()[gen - 1];
  bool diagonal = (gen == 3 || gen == 8 || gen == 15);
  if (diagonal) {
    cmat u = cmat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) u(i, i) = std::exp(iu * phi * g(i, i).real());
    return u;
  }
  return cmat::Identity(4, 4) + iu * std::sin(phi) * g + (std::cos(phi) - 1.0) * (g * g);
}

// Generator index of each of the 12 factors of the SU(4) encoding product.
inline const std::array<int, 12>& su4_factor_generators() {
  static const std::array<int, 12> seq = {3, 2, 3, 5, 3, 10, 3, 2, 3, 5, 3, 2};
  return seq;
}

// Upper end of the parameter range for factor position p (0-based):
// the diagonal factors run over [0, pi], the mixing ones over [0, pi/2].
inline double su4_param_upper(int p) {
  const double pi = std::acos(-1.0);
  return (p % 2 == 0) ? pi : pi / 2;
}

// Product of the 12 encoding factors; a disabled factor is just phi = 0.
inline cmat su4_matrix(const rvec& phi) {
  const auto& seq = su4_factor_generators();
  cmat u = cmat::Identity(4, 4);
  for (int p = 0; p < 12; ++p) {
    if (phi(p) != 0.0) u = u * su4_factor_of_generator(seq[p], phi(p));
  }
  return u;
}

// d/dphi of one factor; i g exp(i g phi) holds for diagonal generators and
// for the g^3 = g ones alike.
inline cmat su4_factor_of_generator_d(int gen, double phi) {
  const cmat& g = su4_generators()[gen - 1];
  return iu * g * su4_factor_of_generator(gen, phi);
}

// Exact derivative of the factor product in the parameter at position p.
inline cmat su4_matrix_d(const rvec& phi, int p) {
  const auto& seq = su4_factor_generators();
  cmat u = cmat::Identity(4, 4);
  for (int q = 0; q < 12; ++q) {
    if (q == p) u = u * su4_factor_of_generator_d(seq[q], phi(q));
    else if (phi(q) != 0.0) u = u * su4_factor_of_generator(seq[q], phi(q));
  }
  return u;
}

}  // namespace spincorr
