#pragma once

#include <spincorr/linalg.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace spincorr {

// Closed forms for the four-node chain split 1+2+1: one sender node, two
// pass-through nodes, one receiver node, unit coupling.

// oscillating factor shared by the off-diagonal transfer channels
inline double one_node_r(double t) {
  const double s5 = std::sqrt(5.0);
  return 2 * std::sin((1 + s5) * t / 4) + (3 + s5) * std::sin((1 - s5) * t / 4);
}

inline double one_node_a1(double t, double lam_b, double lam_c2, double lam_c3) {
  const double s5 = std::sqrt(5.0);
  return (2 * lam_b - 1) * (2 * lam_c3 + 2 * lam_c2 - 1) * one_node_r(t) / (5 + s5);
}

inline double one_node_a2(double t) {
  const double s5 = std::sqrt(5.0);
  const double r = one_node_r(t);
  return r * r / (10 * (3 + s5));
}

inline double one_node_b(double t, double lam_b, double lam_c1, double lam_c2,
                         double lam_c3) {
  const double s5 = std::sqrt(5.0);
  const double a2 = one_node_a2(t);
  const double s = std::sin(s5 * t / 4);
  return lam_b * ((3 + 2 * std::cos(s5 * t / 2)) / 5 - a2) +
         (2 * s * s / 5) *
             (2 * lam_c1 + lam_c2 + lam_c3 + (lam_c3 - lam_c2) * std::cos(t / 2));
}

// the full 3x3 map: rotation-like block in (x, y), scaling in z; the x row
// picks up the y channel with weight -a1, as the simulated map shows
inline rmat one_node_transfer(double t, double lam_b, double lam_c2, double lam_c3) {
  rmat m = rmat::Zero(3, 3);
  const double a1 = one_node_a1(t, lam_b, lam_c2, lam_c3);
  m(0, 1) = -a1;
  m(1, 0) = a1;
  m(2, 2) = one_node_a2(t);
  return m;
}

inline rvec one_node_offset(double t, double lam_b, double lam_c1, double lam_c2,
                            double lam_c3) {
  rvec v = rvec::Zero(3);
  v(2) = one_node_b(t, lam_b, lam_c1, lam_c2, lam_c3);
  return v;
}

// sender-parameter sweep of the receiver state when only the z channel
// survives: the single nonzero 1x1 minor of the receiver Jacobian
inline double one_node_m1(double t, double lam_a, double phi1) {
  const double s5 = std::sqrt(5.0);
  const double r = one_node_r(t);
  return -(2 * lam_a - 1) * r * r * std::sin(2 * phi1) / (10 * (3 + s5));
}

// scalar objective of the one-parameter mixing-angle encoding: its zeros in
// phi1 mark angles the receiver cannot distinguish
inline double one_node_h(double t, double phi1, double lam_a, double lam_b, double lam_c1,
                         double lam_c2, double lam_c3) {
  const double a2 = one_node_a2(t);
  const double b = one_node_b(t, lam_b, lam_c1, lam_c2, lam_c3);
  const double g = (2 * lam_b - 1) * (2 * lam_c3 + 2 * lam_c2 - 1);
  return a2 * (2 * lam_a - 1) * std::sin(2 * phi1) *
         (2 * b + a2 - 1 + (2 * lam_a - 1) * (a2 - g * g) * std::cos(2 * phi1));
}

// interior zero of the bracket above sits at cos(2 phi1) = m(t); an encoding
// window is parameter-free exactly while |m| > 1
inline double one_node_m(double t, double lam_a, double lam_b, double lam_c1,
                         double lam_c2, double lam_c3) {
  const double a2 = one_node_a2(t);
  const double b = one_node_b(t, lam_b, lam_c1, lam_c2, lam_c3);
  const double g = (2 * lam_b - 1) * (2 * lam_c3 + 2 * lam_c2 - 1);
  if (std::abs(2 * lam_a - 1) < 1e-14)
    throw std::domain_error("one_node_m: flat sender spectrum, 2 lam_a - 1 = 0");
  if (std::abs(a2 - g * g) < 1e-14)
    throw std::domain_error("one_node_m: coinciding channel weights, a2 = g^2");
  return -(2 * b + a2 - 1) / ((2 * lam_a - 1) * (a2 - g * g));
}

// Closed forms for the two-node sender and two-node receiver chain (no
// pass-through block), unit coupling.

inline double two_node_f_minus(double t) {
  return std::cos(std::sqrt(5.0) * t / 2) - 5 * std::cos(t / 2) + 4;
}

inline double two_node_f_plus(double t) {
  return std::cos(std::sqrt(5.0) * t / 2) + 5 * std::cos(t / 2) + 4;
}

inline double two_node_det(double t, double lam_b2, double lam_b3) {
  const double f = two_node_f_minus(t);
  double f16 = 1;
  for (int i = 0; i < 16; ++i) f16 *= f;
  double c8 = 1;
  const double c = 2 * lam_b2 + 2 * lam_b3 - 1;
  for (int i = 0; i < 8; ++i) c8 *= c;
  return c8 * f16 / 1e16;
}

// Roots of a scalar function on an interval: bracket on a uniform grid, then
// bisect each bracket essentially to machine precision.
struct RootSettings {
  double grid_step = 1e-3;
  double tol = 1e-6;       // guaranteed bracket width
  int max_iter = 200;
};

inline std::vector<double> find_roots(const std::function<double(double)>& f, double lo,
                                      double hi, RootSettings rs = {}) {
  if (!(hi > lo)) throw std::invalid_argument("find_roots: empty interval");
  std::vector<double> roots;
  const int n = static_cast<int>(std::ceil((hi - lo) / rs.grid_step));
  double x0 = lo, f0 = f(lo);
  for (int i = 1; i <= n; ++i) {
    double x1 = std::min(lo + i * rs.grid_step, hi);
    double f1 = f(x1);
    if (f0 == 0) {
      if (roots.empty() || x0 - roots.back() > rs.tol) roots.push_back(x0);
    } else if (f0 * f1 < 0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < rs.max_iter && b - a > 1e-14 * (1 + std::abs(a)); ++it) {
        double m = 0.5 * (a + b), fm = f(m);
        if (fm == 0) {
          a = b = m;
          break;
        }
        if (fa * fm < 0) b = m;
        else a = m, fa = fm;
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0 && (roots.empty() || hi - roots.back() > rs.tol)) roots.push_back(hi);
  return roots;
}

}  // namespace spincorr
