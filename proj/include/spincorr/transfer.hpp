#pragma once

#include <spincorr/linalg.hpp>
#include <spincorr/vectorize.hpp>

#include <vector>

namespace spincorr {

// Kernel taking the sender's initial matrix to the receiver's evolved one,
// rho^B_{ij}(t) = sum_{nm} T_{ij;nm}(t) rho^A_{nm}(0), for a chain prepared in
// rho^A (x) rho^CB and evolved by V. All of the time dependence lives in V.
struct TransferTensor {
  int na = 0, nb = 0;
  std::vector<cplx> data;  // [iB][jB][nA][mA]
  cplx& at(int ib, int jb, int n, int m) {
    return data[static_cast<size_t>(((ib * nb + jb) * na + n) * na + m)];
  }
  cplx at(int ib, int jb, int n, int m) const {
    return data[static_cast<size_t>(((ib * nb + jb) * na + n) * na + m)];
  }
};

inline TransferTensor transfer_tensor(const cmat& v, const cmat& rho_cb, int na, int nc, int nb) {
  if (v.rows() != na * nc * nb || rho_cb.rows() != nc * nb)
    throw std::invalid_argument("transfer_tensor: dimension mismatch");
  TransferTensor tt;
  tt.na = na;
  tt.nb = nb;
  tt.data.assign(static_cast<size_t>(na * na * nb * nb), cplx(0.0));
  auto idx = [&](int a, int c, int b) { return (a * nc + c) * nb + b; };
  for (int ib = 0; ib < nb; ++ib)
    for (int jb = 0; jb < nb; ++jb)
      for (int n = 0; n < na; ++n)
        for (int m = 0; m < na; ++m) {
          cplx sum = 0.0;
          for (int ia = 0; ia < na; ++ia)
            for (int ic = 0; ic < nc; ++ic)
              for (int kc = 0; kc < nc; ++kc)
                for (int kb = 0; kb < nb; ++kb) {
                  const cplx vl = v(idx(ia, ic, ib), idx(n, kc, kb));
                  if (vl == cplx(0.0)) continue;
                  for (int oc = 0; oc < nc; ++oc)
                    for (int ob = 0; ob < nb; ++ob)
                      sum += vl * rho_cb(kc * nb + kb, oc * nb + ob) *
                             std::conj(v(idx(ia, ic, jb), idx(m, oc, ob)));
                }
          tt.at(ib, jb, n, m) = sum;
        }
  return tt;
}

// Largest violation of the kernel's conjugation symmetries under swapping the
// receiver indices.
inline double transfer_symmetry_error(const TransferTensor& tt) {
  double err = 0.0;
  auto t1 = [&](int i, int j, int n, int m) { return tt.at(i, j, n, m) + tt.at(i, j, m, n); };
  auto t2 = [&](int i, int j, int n, int m) { return tt.at(i, j, n, m) - tt.at(i, j, m, n); };
  for (int i = 0; i < tt.nb; ++i)
    for (int j = 0; j < tt.nb; ++j)
      for (int n = 0; n < tt.na; ++n) {
        for (int m = n + 1; m < tt.na; ++m) {
          err = std::max(err, std::abs(t1(i, j, n, m) - std::conj(t1(j, i, n, m))));
          err = std::max(err, std::abs(t2(i, j, n, m) + std::conj(t2(j, i, n, m))));
        }
        err = std::max(err, std::abs(tt.at(i, j, n, n) - std::conj(tt.at(j, i, n, n))));
      }
  return err;
}

struct AffineMap {
  rmat mat;  // (nb^2 - 1) x (na^2 - 1)
  rvec off;
  rvec apply(const rvec& x) const { return mat * x + off; }
};

// Real form of the kernel acting on coordinate vectors: xhat(rho^B) =
// mat * xhat(rho^A) + off. The unit trace of rho^A folds the last diagonal
// column into the other diagonal columns and the offset.
inline AffineMap real_affine_map(const TransferTensor& tt) {
  const int na = tt.na, nb = tt.nb;
  const int ma = pair_count(na), mb = pair_count(nb);
  AffineMap map;
  map.mat = rmat::Zero(nb * nb - 1, na * na - 1);
  map.off = rvec::Zero(nb * nb - 1);
  auto t1 = [&](int i, int j, int n, int m) { return tt.at(i, j, n, m) + tt.at(i, j, m, n); };
  auto t2 = [&](int i, int j, int n, int m) { return tt.at(i, j, n, m) - tt.at(i, j, m, n); };

  auto fill_row = [&](int row_re, int row_im, int i, int j) {
    // row_im < 0 means the diagonal subsystem, whose imaginary part is empty
    for (int n = 0; n < na; ++n)
      for (int m = n + 1; m < na; ++m) {
        const int c = pair_index(n, m, na);
        const cplx a = t1(i, j, n, m), b = t2(i, j, n, m);
        map.mat(row_re, c) = a.real();
        map.mat(row_re, ma + c) = -b.imag();
        if (row_im >= 0) {
          map.mat(row_im, c) = a.imag();
          map.mat(row_im, ma + c) = b.real();
        }
      }
    const cplx last = tt.at(i, j, na - 1, na - 1);
    for (int n = 0; n + 1 < na; ++n) {
      const cplx diff = tt.at(i, j, n, n) - last;
      map.mat(row_re, 2 * ma + n) = diff.real();
      if (row_im >= 0) map.mat(row_im, 2 * ma + n) = diff.imag();
    }
    map.off(row_re) = last.real();
    if (row_im >= 0) map.off(row_im) = last.imag();
  };

  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      fill_row(pair_index(i, j, nb), mb + pair_index(i, j, nb), i, j);
  for (int i = 0; i + 1 < nb; ++i) fill_row(2 * mb + i, -1, i, i);
  return map;
}

inline AffineMap transfer_map(const cmat& v, const cmat& rho_cb, int na, int nc, int nb) {
  return real_affine_map(transfer_tensor(v, rho_cb, na, nc, nb));
}

inline cmat receiver_state(const AffineMap& map, const cmat& rho_a, int nb) {
  return unvectorize(map.apply(xhat(rho_a)), nb);
}

}  // namespace spincorr
