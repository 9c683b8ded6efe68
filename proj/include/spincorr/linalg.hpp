#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace spincorr {

using cplx = std::complex<double>;

template <typename Scalar>
using mat_t = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using vec_t = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using cmat = mat_t<cplx>;
using cvec = vec_t<cplx>;
using rmat = mat_t<double>;
using rvec = vec_t<double>;

inline constexpr cplx iu{0.0, 1.0};

// A acts on the left (slow) tensor factor, B on the right (fast) one.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

// Partial trace over the left factor of a (dl*dr) x (dl*dr) matrix.
template <typename Derived>
mat_t<typename Derived::Scalar> ptrace_left(const Eigen::MatrixBase<Derived>& m, int dl, int dr) {
  if (m.rows() != dl * dr || m.cols() != dl * dr)
    throw std::invalid_argument("ptrace_left: dimension mismatch");
  mat_t<typename Derived::Scalar> out = mat_t<typename Derived::Scalar>::Zero(dr, dr);
  for (int a = 0; a < dl; ++a)
    for (int i = 0; i < dr; ++i)
      for (int j = 0; j < dr; ++j) out(i, j) += m(a * dr + i, a * dr + j);
  return out;
}

// Partial trace over the right factor.
template <typename Derived>
mat_t<typename Derived::Scalar> ptrace_right(const Eigen::MatrixBase<Derived>& m, int dl, int dr) {
  if (m.rows() != dl * dr || m.cols() != dl * dr)
    throw std::invalid_argument("ptrace_right: dimension mismatch");
  mat_t<typename Derived::Scalar> out = mat_t<typename Derived::Scalar>::Zero(dl, dl);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dl; ++j)
      for (int a = 0; a < dr; ++a) out(i, j) += m(i * dr + a, j * dr + a);
  return out;
}

struct HermitianEig {
  rvec values;   // descending
  cmat vectors;  // columns, same order
};

// Symmetrizes the input before solving, so slightly non-Hermitian matrices
// (roundoff from products) are accepted.
inline HermitianEig eig_hermitian(const cmat& m) {
  cmat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  const int n = static_cast<int>(m.rows());
  HermitianEig out;
  out.values = es.eigenvalues().reverse();
  out.vectors = cmat(n, n);
  for (int k = 0; k < n; ++k) out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  return out;
}

// exp(-i t H) for Hermitian H.
inline cmat evolution_operator(const cmat& h, double t) {
  HermitianEig e = eig_hermitian(h);
  cvec phase = (-iu * t * e.values.array()).exp().matrix();
  return e.vectors * phase.asDiagonal() * e.vectors.adjoint();
}

template <typename Derived>
rvec singular_values(const Eigen::MatrixBase<Derived>& m) {
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(m.derived());
  return svd.singularValues();
}

inline double rank_threshold(double sigma_max, double tol_abs, double tol_rel) {
  return std::max(tol_abs, tol_rel * sigma_max);
}

// Singular values strictly above max(tol_abs, tol_rel * sigma_max).
template <typename Derived>
int numerical_rank(const Eigen::MatrixBase<Derived>& m, double tol_abs = 1e-12,
                   double tol_rel = 1e-8) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  rvec sv = singular_values(m);
  const double tau = rank_threshold(sv(0), tol_abs, tol_rel);
  int r = 0;
  while (r < sv.size() && sv(r) > tau) ++r;
  return r;
}

inline double hermiticity_error(const cmat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double trace_error(const cmat& m) { return std::abs(m.trace() - cplx(1.0)); }

inline double min_eigenvalue(const cmat& m) { return eig_hermitian(m).values.minCoeff(); }

inline double unitarity_error(const cmat& u) {
  return (u.adjoint() * u - cmat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

inline void check_density_matrix(const cmat& rho, double tol_herm = 1e-12, double tol_tr = 1e-12,
                                 double tol_psd = 1e-10) {
  if (hermiticity_error(rho) > tol_herm) throw std::runtime_error("density matrix not Hermitian");
  if (trace_error(rho) > tol_tr) throw std::runtime_error("density matrix trace differs from 1");
  if (min_eigenvalue(rho) < -tol_psd) throw std::runtime_error("density matrix not PSD");
}

// Visits all k-subsets of {0,..,n-1} in lexicographic order.
inline void for_each_combination(int n, int k,
                                 const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

inline double minor_value(const rmat& m, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  rmat sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
  return sub.determinant();
}

inline cplx minor_value(const cmat& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  cmat sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
  return sub.determinant();
}

struct MinorEntry {
  std::vector<int> rows, cols;
  double value;
};

// All order-k minors. Guarded against combinatorial blowups.
inline std::vector<MinorEntry> minor_survey(const rmat& m, int k, double max_count = 1e7) {
  const double count = binomial(static_cast<int>(m.rows()), k) *
                       binomial(static_cast<int>(m.cols()), k);
  if (count > max_count) throw std::runtime_error("minor_survey: too many minors requested");
  std::vector<MinorEntry> out;
  out.reserve(static_cast<size_t>(count));
  for_each_combination(static_cast<int>(m.rows()), k, [&](const std::vector<int>& rows) {
    for_each_combination(static_cast<int>(m.cols()), k, [&](const std::vector<int>& cols) {
      out.push_back({rows, cols, minor_value(m, rows, cols)});
    });
  });
  return out;
}

inline double minor_abs_sum(const rmat& m, int k) {
  double s = 0.0;
  for (const auto& e : minor_survey(m, k)) s += std::abs(e.value);
  return s;
}

}  // namespace spincorr
