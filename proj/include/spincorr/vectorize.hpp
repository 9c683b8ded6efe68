#pragma once

#include <spincorr/linalg.hpp>

namespace spincorr {

inline int pair_count(int n) { return n * (n - 1) / 2; }

// Row-major position of the pair (i, j), i < j, both 0-based, among the
// strictly upper triangle of an n x n matrix.
inline int pair_index(int i, int j, int n) { return i * (2 * n - i - 1) / 2 + (j - i - 1); }

// Real coordinate vector of a Hermitian matrix with unit trace: upper
// triangle real parts, then upper triangle imaginary parts, then the first
// n-1 diagonal entries. Length n^2 - 1.
inline rvec xhat(const cmat& rho) {
  const int n = static_cast<int>(rho.rows());
  const int m = pair_count(n);
  rvec x(n * n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      x(pair_index(i, j, n)) = rho(i, j).real();
      x(m + pair_index(i, j, n)) = rho(i, j).imag();
    }
  for (int i = 0; i + 1 < n; ++i) x(2 * m + i) = rho(i, i).real();
  return x;
}

// Inverse of xhat for a tangent direction: a derivative of a unit-trace
// family is traceless, so the last diagonal entry is minus the others.
inline cmat unvectorize_traceless(const rvec& x, int n) {
  const int m = pair_count(n);
  cmat rho = cmat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cplx v(x(pair_index(i, j, n)), x(m + pair_index(i, j, n)));
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }
  double tr = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    rho(i, i) = x(2 * m + i);
    tr += x(2 * m + i);
  }
  rho(n - 1, n - 1) = -tr;
  return rho;
}

// Inverse of xhat; the last diagonal entry is fixed by the unit trace.
inline cmat unvectorize(const rvec& x, int n) {
  const int m = pair_count(n);
  cmat rho = cmat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cplx v(x(pair_index(i, j, n)), x(m + pair_index(i, j, n)));
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }
  double tr = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    rho(i, i) = x(2 * m + i);
    tr += x(2 * m + i);
  }
  rho(n - 1, n - 1) = 1.0 - tr;
  return rho;
}

}  // namespace spincorr
