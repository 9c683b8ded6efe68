#pragma once

#include <spincorr/linalg.hpp>
#include <spincorr/spectrum.hpp>
#include <spincorr/transfer.hpp>
#include <spincorr/unitary.hpp>
#include <spincorr/vectorize.hpp>

#include <functional>
#include <numeric>
#include <random>
#include <string>

namespace spincorr {

struct ToleranceSettings {
  double tol_abs = 1e-12;
  double tol_rel = 1e-8;
  double fd_step = 1e-6;
  // Central differences of an identically-zero function leave roundoff of
  // order eps/step (~1e-10 per entry, a few 1e-8 in singular values), so rank
  // decisions on differenced matrices use this floor instead of tol_abs.
  double fd_rank_abs = 1e-7;
  double fd_rank_floor() const { return std::max(tol_abs, fd_rank_abs); }
};

// A parametrized initial state of the sender: rho(phi) = U(phi) rho0 U(phi)^+,
// phi running over the open box of active group parameters.
struct Encoder {
  int dim = 0;
  cmat rho0;
  std::vector<std::pair<double, double>> box;
  std::function<cmat(const rvec&)> unitary;
  std::function<cmat(const rvec&, int)> unitary_d;  // exact d/dphi_j, when known
  cmat state(const rvec& phi) const {
    cmat u = unitary(phi);
    return u * rho0 * u.adjoint();
  }
  // d(U rho0 U^+)/dphi_j = M + M^+ with M = dU rho0 U^+
  cmat state_d(const rvec& phi, int j) const {
    cmat m = unitary_d(phi, j) * rho0 * unitary(phi).adjoint();
    return m + m.adjoint();
  }
  bool has_derivative() const { return static_cast<bool>(unitary_d); }
  rvec spectrum() const { return eig_hermitian(rho0).values; }
};

inline cmat diagonal_state(const rvec& lambda) {
  cmat rho = cmat::Zero(lambda.size(), lambda.size());
  for (int i = 0; i < lambda.size(); ++i) rho(i, i) = lambda(i);
  return rho;
}

// Two active parameters: the mixing angle and the phase. The third SU(2)
// angle commutes with a diagonal spectrum and encodes nothing.
inline Encoder su2_encoder(double lam1) {
  const double pi = std::acos(-1.0);
  Encoder e;
  e.dim = 2;
  rvec lam(2);
  lam << lam1, 1.0 - lam1;
  e.rho0 = diagonal_state(lam);
  e.box = {{0.0, pi / 2}, {0.0, 2 * pi}};
  e.unitary = [](const rvec& phi) { return su2_matrix(phi(0), phi(1), 0.0); };
  e.unitary_d = [](const rvec& phi, int j) { return su2_matrix_d(phi(0), phi(1), 0.0, j); };
  return e;
}

// Encoder over an explicit subset of the 12 factor positions.
inline Encoder su4_encoder(const rvec& lambda, const std::vector<int>& active) {
  Encoder e;
  e.dim = 4;
  e.rho0 = diagonal_state(lambda);
  for (int p : active) e.box.emplace_back(0.0, su4_param_upper(p));
  e.unitary = [active](const rvec& phi) {
    rvec full = rvec::Zero(12);
    for (size_t k = 0; k < active.size(); ++k) full(active[k]) = phi(static_cast<int>(k));
    return su4_matrix(full);
  };
  e.unitary_d = [active](const rvec& phi, int j) {
    rvec full = rvec::Zero(12);
    for (size_t k = 0; k < active.size(); ++k) full(active[k]) = phi(static_cast<int>(k));
    return su4_matrix_d(full, active[j]);
  };
  return e;
}

// Central-difference Jacobian of f over the box. Columns follow phi0's order.
inline rmat jacobian_fd(const std::function<rvec(const rvec&)>& f, const rvec& phi0,
                        const std::vector<std::pair<double, double>>& box, double h = 1e-6) {
  const int p = static_cast<int>(phi0.size());
  for (int k = 0; k < p; ++k)
    if (phi0(k) - h <= box[k].first || phi0(k) + h >= box[k].second)
      throw std::domain_error("jacobian_fd: step leaves the parameter box");
  rmat jac;
  for (int k = 0; k < p; ++k) {
    rvec hi = phi0, lo = phi0;
    hi(k) += h;
    lo(k) -= h;
    rvec col = (f(hi) - f(lo)) / (2 * h);
    if (jac.size() == 0) jac = rmat(col.size(), p);
    jac.col(k) = col;
  }
  if (jac.size() == 0) jac = rmat(0, 0);
  return jac;
}

inline rmat state_jacobian(const Encoder& enc, const rvec& phi, double h = 1e-6) {
  return jacobian_fd([&](const rvec& q) { return xhat(enc.state(q)); }, phi, enc.box, h);
}

// Deterministic interior points of a box, kept a tenth of each interval away
// from the ends.
inline std::vector<rvec> interior_samples(const std::vector<std::pair<double, double>>& box,
                                          int count, unsigned seed = 1) {
  std::mt19937 gen(seed);
  std::vector<rvec> out;
  for (int s = 0; s < count; ++s) {
    rvec phi(static_cast<int>(box.size()));
    for (size_t k = 0; k < box.size(); ++k) {
      const double w = box[k].second - box[k].first;
      std::uniform_real_distribution<double> u(box[k].first + 0.1 * w, box[k].second - 0.1 * w);
      phi(static_cast<int>(k)) = u(gen);
    }
    out.push_back(phi);
  }
  return out;
}

struct RankCheck {
  int value = 0;
  bool consistent = true;
  std::vector<int> per_sample;
  int formula = -1;  // multiplicity-formula prediction, where one applies
  bool warning = false;
};

inline RankCheck collect_ranks(const std::vector<int>& ranks) {
  RankCheck rc;
  rc.per_sample = ranks;
  rc.value = ranks.empty() ? 0 : ranks.front();
  for (int r : ranks)
    if (r != rc.value) rc.consistent = false;
  if (!rc.consistent)
    rc.value = *std::max_element(ranks.begin(), ranks.end());
  rc.warning = !rc.consistent;
  return rc;
}

// Parameters actually encoded into the sender state: the rank of the state
// Jacobian, sampled at several interior points and cross-checked against the
// eigenvalue-multiplicity count.
inline RankCheck e_aa(const Encoder& enc, int nsamples = 5, unsigned seed = 1,
                      ToleranceSettings tol = {}) {
  std::vector<int> ranks;
  for (const rvec& phi : interior_samples(enc.box, nsamples, seed))
    ranks.push_back(numerical_rank(state_jacobian(enc, phi, tol.fd_step),
                                   tol.fd_rank_floor(), tol.tol_rel));
  RankCheck rc = collect_ranks(ranks);
  if (enc.box.empty()) rc.value = 0;  // nothing varies
  rc.formula = encoded_param_count(enc.spectrum());
  rc.warning = rc.warning || rc.value != rc.formula;
  return rc;
}

// Parameters of the sender encoding visible in the receiver state: the rank
// of That * J^A, which the chain rule makes equal to the rank of the
// end-to-end Jacobian.
inline RankCheck e_ab(const AffineMap& map, const Encoder& enc, int nsamples = 5,
                      unsigned seed = 1, ToleranceSettings tol = {}) {
  std::vector<int> ranks;
  for (const rvec& phi : interior_samples(enc.box, nsamples, seed)) {
    rmat ja = state_jacobian(enc, phi, tol.fd_step);
    ranks.push_back(numerical_rank(rmat(map.mat * ja), tol.fd_rank_floor(), tol.tol_rel));
  }
  RankCheck rc = collect_ranks(ranks);
  if (enc.box.empty()) rc.value = 0;
  return rc;
}

inline int rank_transfer(const AffineMap& map, ToleranceSettings tol = {}) {
  return numerical_rank(map.mat, tol.tol_abs, tol.tol_rel);
}

// Parameters detectable anywhere in the full initial state (arbitrary, not
// necessarily product): rank of the full-state Jacobian under U(phi) (x) 1.
inline int e_a_full(const cmat& rho0_full, const Encoder& enc, int dim_rest, const rvec& phi,
                    ToleranceSettings tol = {}) {
  const int dr = dim_rest;
  auto f = [&](const rvec& q) {
    cmat u = kron(enc.unitary(q), cmat(cmat::Identity(dr, dr)));
    return xhat(u * rho0_full * u.adjoint());
  };
  return numerical_rank(jacobian_fd(f, phi, enc.box, tol.fd_step), tol.fd_rank_floor(),
                        tol.tol_rel);
}

// First linearly independent columns of the state Jacobian for spectra whose
// active factor subset has no closed form; deterministic through the seed.
inline std::vector<int> active_factor_positions_numeric(const rvec& lambda, unsigned seed = 1,
                                                        ToleranceSettings tol = {}) {
  std::vector<int> all(12);
  std::iota(all.begin(), all.end(), 0);
  Encoder full = su4_encoder(lambda, all);
  rvec phi = interior_samples(full.box, 1, seed).front();
  rmat jac = state_jacobian(full, phi, tol.fd_step);
  const int r = numerical_rank(jac, tol.fd_rank_floor(), tol.tol_rel);
  Eigen::ColPivHouseholderQR<rmat> qr(jac);
  auto perm = qr.colsPermutation().indices();
  std::vector<int> active(perm.data(), perm.data() + r);
  std::sort(active.begin(), active.end());
  return active;
}

// Encoder with the standard active set for the given 4-level spectrum. The
// fixed subsets assume a descending diagonal; any other ordering conjugates
// the stabilizer, so fall back to the numeric selection.
inline Encoder su4_encoder(const rvec& lambda, unsigned seed = 1) {
  bool descending = true;
  for (int i = 0; i + 1 < lambda.size(); ++i)
    if (lambda(i) < lambda(i + 1) - 1e-12) descending = false;
  std::optional<std::vector<int>> closed;
  if (descending) closed = active_factor_positions(lambda);
  return su4_encoder(lambda, closed ? *closed : active_factor_positions_numeric(lambda, seed));
}

struct Rational {
  long long num = 0, den = 1;
};

inline Rational normalized_value(int e, int d_tilde) {
  if (d_tilde <= 0) throw std::domain_error("normalized_value: nonpositive denominator");
  long long g = std::gcd(static_cast<long long>(e), static_cast<long long>(d_tilde));
  if (g == 0) return {0, 1};
  return {e / g, d_tilde / g};
}

inline std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace spincorr
