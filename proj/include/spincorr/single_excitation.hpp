#pragma once

#include <spincorr/chain.hpp>
#include <spincorr/correlation.hpp>
#include <spincorr/nonreducible.hpp>

#include <functional>
#include <utility>
#include <vector>

namespace spincorr {

// The flip-flop chain restricted to one excitation, diagonalized once. The
// decoupled vacuum is not stored; callers carry it explicitly. Node labels
// are 1-based, node j sits at row j-1.
struct SectorChain {
  int nodes = 0;
  double coupling = 1.0;
  rvec evals;
  rmat evecs;  // columns are sector eigenvectors
};

inline SectorChain sector_chain(int nodes, double coupling = 1.0) {
  rmat h = rmat::Zero(nodes, nodes);
  for (int j = 0; j + 1 < nodes; ++j) {
    h(j, j + 1) = -coupling / 2;
    h(j + 1, j) = -coupling / 2;
  }
  Eigen::SelfAdjointEigenSolver<rmat> es(h);
  return {nodes, coupling, es.eigenvalues(), es.eigenvectors()};
}

// <to| exp(-i H t) |from> inside the sector.
inline cplx transition_amplitude(const SectorChain& c, int to, int from, double t) {
  cplx s = 0;
  for (int m = 0; m < c.nodes; ++m)
    s += c.evecs(to - 1, m) * c.evecs(from - 1, m) * std::exp(cplx(0, -c.evals(m) * t));
  return s;
}

inline cplx end_to_end_amplitude(const SectorChain& c, double t) {
  return transition_amplitude(c, c.nodes, 1, t);
}

// The excitation placed on one node, evolved: amplitudes on every node.
inline cvec evolved_column(const SectorChain& c, int from, double t) {
  cvec phase(c.nodes);
  for (int m = 0; m < c.nodes; ++m)
    phase(m) = c.evecs(from - 1, m) * std::exp(cplx(0, -c.evals(m) * t));
  return c.evecs.cast<cplx>() * phase;
}

// Amplitudes feeding the last nb nodes from the first na nodes: entry (j-1,
// k-1) carries sender node k into receiver slot j, which is node N - nb + j.
inline cmat transition_block(const SectorChain& c, int na, int nb, double t) {
  cmat r(nb, na);
  for (int j = 1; j <= nb; ++j)
    for (int k = 1; k <= na; ++k)
      r(j - 1, k - 1) = transition_amplitude(c, c.nodes - nb + j, k, t);
  return r;
}

// Hypersphere chart for the sender pure state a_0 |vac> + sum_j a_j |j> with
// a_0 real: ntilde mixing angles followed by ntilde phases.
struct AmplitudeChart {
  int ntilde = 1;

  std::vector<std::pair<double, double>> box() const {
    const double pi = std::acos(-1.0);
    std::vector<std::pair<double, double>> b;
    for (int k = 0; k < ntilde; ++k) b.emplace_back(0.0, pi / 2);
    for (int k = 0; k < ntilde; ++k) b.emplace_back(0.0, 2 * pi);
    return b;
  }

  cvec amplitudes(const rvec& phi) const {
    cvec a(ntilde + 1);
    a(0) = std::cos(phi(0));
    double run = 1;  // sines consumed so far
    for (int j = 1; j < ntilde; ++j) {
      run *= std::sin(phi(j - 1));
      a(j) = run * std::cos(phi(j)) * std::exp(cplx(0, phi(ntilde + j - 1)));
    }
    run *= std::sin(phi(ntilde - 1));
    a(ntilde) = run * std::exp(cplx(0, phi(2 * ntilde - 1)));
    return a;
  }
};

// Weight that the evolved state leaves on the receiver support, vacuum
// included.
inline double support_weight(const cmat& rblock, const cvec& alpha) {
  return std::norm(alpha(0)) + (rblock * alpha.tail(alpha.size() - 1)).squaredNorm();
}

// Reduced state of the last nb nodes, basis ordered vacuum first. Excitation
// weight caught elsewhere on the chain piles onto the vacuum corner.
inline cmat long_receiver_state(const cmat& rblock, const cvec& alpha) {
  const int nb = static_cast<int>(rblock.rows());
  cvec beta(nb + 1);
  beta(0) = alpha(0);
  beta.tail(nb) = rblock * alpha.tail(alpha.size() - 1);
  cmat rho = beta * beta.adjoint();
  rho(0, 0) += 1.0 - beta.squaredNorm();
  return rho;
}

// Linear map on the amplitude vector: the vacuum slot passes through, the
// excitation slots go through the transition block.
inline cmat long_transfer(const cmat& rblock, int na) {
  const int nb = static_cast<int>(rblock.rows());
  cmat t = cmat::Zero(nb + 1, na + 1);
  t(0, 0) = 1;
  t.block(1, 1, nb, na) = rblock;
  return t;
}

inline rmat real_embedding(const cmat& m) {
  const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols());
  rmat out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.real();
  out.topRightCorner(r, c) = -m.imag();
  out.bottomLeftCorner(r, c) = m.imag();
  out.bottomRightCorner(r, c) = m.real();
  return out;
}

struct LongCorrelation {
  int raw_rank = 0;  // rank of the embedded transfer
  int value = 0;     // capped by the 2 ntilde chart parameters
};

inline LongCorrelation e_ab_long(const cmat& rblock, int ntilde_a, ToleranceSettings tol = {}) {
  LongCorrelation out;
  rmat emb = real_embedding(long_transfer(rblock, ntilde_a));
  out.raw_rank = numerical_rank(emb, tol.tol_abs, tol.tol_rel);
  out.value = std::min(out.raw_rank - 1, 2 * ntilde_a);
  return out;
}

struct LongMin {
  int value = 0;
  bool degenerate = false;
  bool consistent = true;
};

inline LongMin e_ab_min_long(const cmat& rblock, int ntilde_a, int nsamples = 5,
                             unsigned seed = 1, ToleranceSettings tol = {},
                             double degeneracy_gap = 1e-9) {
  AmplitudeChart chart{ntilde_a};
  auto rho_of = [&](const rvec& phi) {
    return long_receiver_state(rblock, chart.amplitudes(phi));
  };
  MinCheck mc = e_ab_min(rho_of, chart.box(), nsamples, seed, tol, degeneracy_gap);
  return {mc.value, mc.any_degenerate, mc.consistent};
}

}  // namespace spincorr
