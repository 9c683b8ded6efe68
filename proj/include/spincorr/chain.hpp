#pragma once

#include <spincorr/linalg.hpp>

namespace spincorr {

// Nearest-neighbour flip-flop chain, H = -(d/2) sum_k (s+_k s-_{k+1} + h.c.),
// on the full 2^n space. Bit (n-k) of the basis index, counted from the least
// significant end, holds the excitation of node k, so node 1 is the most
// significant bit.
inline rmat xy_chain_hamiltonian(int n, double d = 1.0) {
  const int dim = 1 << n;
  rmat h = rmat::Zero(dim, dim);
  for (int k = 0; k < n - 1; ++k) {
    const int hi = 1 << (n - 1 - k), lo = 1 << (n - 2 - k);
    for (int i = 0; i < dim; ++i) {
      const bool a = i & hi, b = i & lo;
      if (a != b) h(i ^ (hi | lo), i) += -d / 2;
    }
  }
  return h;
}

// One eigendecomposition, then evolution operators for any time on demand.
struct Propagator {
  rvec w;
  cmat u;
  cmat at(double t) const {
    cvec phase = (-iu * t * w.array()).exp().matrix();
    return u * phase.asDiagonal() * u.adjoint();
  }
};

inline Propagator make_propagator(const cmat& h) {
  HermitianEig e = eig_hermitian(h);
  return {e.values, e.vectors};
}

inline Propagator make_propagator(const rmat& h) {
  return make_propagator(cmat(h.cast<cplx>()));
}

// Restriction of the chain Hamiltonian to the vacuum plus the n one-excitation
// states: (n+1) x (n+1), index 0 is the decoupled vacuum, index j the
// excitation sitting on node j.
inline rmat single_excitation_hamiltonian(int n, double d = 1.0) {
  rmat h = rmat::Zero(n + 1, n + 1);
  for (int j = 1; j < n; ++j) {
    h(j, j + 1) = -d / 2;
    h(j + 1, j) = -d / 2;
  }
  return h;
}

}  // namespace spincorr
