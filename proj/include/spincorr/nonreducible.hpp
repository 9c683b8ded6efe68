#pragma once

#include <spincorr/correlation.hpp>
#include <spincorr/linalg.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace spincorr {

// Coefficients a_0 .. a_{N-2} of the unit-trace characteristic polynomial
//   lambda^N - lambda^{N-1} + sum_i a_i lambda^i,
// assembled from sums of principal minors, one order at a time.
inline rvec char_coeffs(const cmat& rho) {
  const int n = static_cast<int>(rho.rows());
  rvec a = rvec::Zero(n - 1);
  for (int j = 2; j <= n; ++j) {
    double s = 0;
    for_each_combination(n, j, [&](const std::vector<int>& idx) {
      s += minor_value(rho, idx, idx).real();
    });
    const int i = n - j;  // coefficient index this minor order feeds
    a(i) = ((n - i) % 2 == 0) ? s : -s;
  }
  return a;
}

// Unrolled four-level version of the same minor sums, for hot loops.
inline rvec char_coeffs4(const Eigen::Matrix4cd& r) {
  auto m2 = [&](int i, int j) {
    return r(i, i).real() * r(j, j).real() - std::norm(r(i, j));
  };
  const double s2 = m2(0, 1) + m2(0, 2) + m2(0, 3) + m2(1, 2) + m2(1, 3) + m2(2, 3);
  auto m3 = [&](int i, int j, int k) {
    return (r(i, i) * (r(j, j) * r(k, k) - r(j, k) * r(k, j)) -
            r(i, j) * (r(j, i) * r(k, k) - r(j, k) * r(k, i)) +
            r(i, k) * (r(j, i) * r(k, j) - r(j, j) * r(k, i)))
        .real();
  };
  const double s3 = m3(0, 1, 2) + m3(0, 1, 3) + m3(0, 2, 3) + m3(1, 2, 3);
  const double s4 = r.determinant().real();
  rvec a(3);
  a << s4, -s3, s2;
  return a;
}

// Directional derivative of one principal minor: by multilinearity, the sum
// over rows of the determinant with that row taken from drho.
inline double minor_derivative(const cmat& rho, const cmat& drho, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  cmat sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub(a, b) = rho(idx[a], idx[b]);
  double d = 0;
  for (int r = 0; r < k; ++r) {
    cmat m = sub;
    for (int b = 0; b < k; ++b) m(r, b) = drho(idx[r], idx[b]);
    d += m.determinant().real();
  }
  return d;
}

// Exact directional derivative of char_coeffs along the tangent drho. The
// interesting minors downstream sit far below what differencing the
// coefficients themselves can resolve, so this route is load-bearing.
inline rvec char_coeffs_d(const cmat& rho, const cmat& drho) {
  const int n = static_cast<int>(rho.rows());
  rvec a = rvec::Zero(n - 1);
  for (int j = 2; j <= n; ++j) {
    double s = 0;
    for_each_combination(n, j, [&](const std::vector<int>& idx) {
      s += minor_derivative(rho, drho, idx);
    });
    const int i = n - j;
    a(i) = ((n - i) % 2 == 0) ? s : -s;
  }
  return a;
}

// Unrolled four-level version for hot loops, matching char_coeffs4.
inline rvec char_coeffs4_d(const Eigen::Matrix4cd& r, const Eigen::Matrix4cd& dr) {
  auto dm2 = [&](int i, int j) {
    return dr(i, i).real() * r(j, j).real() + r(i, i).real() * dr(j, j).real() -
           2 * (dr(i, j) * std::conj(r(i, j))).real();
  };
  const double s2 = dm2(0, 1) + dm2(0, 2) + dm2(0, 3) + dm2(1, 2) + dm2(1, 3) + dm2(2, 3);
  auto dm3 = [&](int i, int j, int k) {
    const int idx[3] = {i, j, k};
    Eigen::Matrix3cd base;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) base(a, b) = r(idx[a], idx[b]);
    double d = 0;
    for (int rr = 0; rr < 3; ++rr) {
      Eigen::Matrix3cd m = base;
      for (int b = 0; b < 3; ++b) m(rr, b) = dr(idx[rr], idx[b]);
      d += m.determinant().real();
    }
    return d;
  };
  const double s3 = dm3(0, 1, 2) + dm3(0, 1, 3) + dm3(0, 2, 3) + dm3(1, 2, 3);
  double s4 = 0;
  for (int rr = 0; rr < 4; ++rr) {
    Eigen::Matrix4cd m = r;
    m.row(rr) = dr.row(rr);
    s4 += m.determinant().real();
  }
  rvec a(3);
  a << s4, -s3, s2;
  return a;
}

// Monic polynomial with the given roots; returns coefficients of
// lambda^0 .. lambda^{P-1}.
inline rvec poly_from_roots(const rvec& roots) {
  std::vector<double> c = {1.0};
  for (int k = 0; k < roots.size(); ++k) {
    c.push_back(0.0);
    for (int i = static_cast<int>(c.size()) - 1; i > 0; --i)
      c[i] = c[i - 1] - roots(k) * c[i];
    c[0] *= -roots(k);
  }
  rvec out(roots.size());
  for (int i = 0; i < roots.size(); ++i) out(i) = c[i];
  return out;
}

// Contiguous clusters of a descending eigenvalue list.
inline std::vector<int> cluster_sizes(const rvec& eigs_desc, double gap = 1e-9) {
  std::vector<int> sizes;
  for (int i = 0; i < eigs_desc.size(); ++i) {
    if (i == 0 || eigs_desc(i - 1) - eigs_desc(i) > gap) sizes.push_back(1);
    else ++sizes.back();
  }
  return sizes;
}

struct ReductionPlan {
  std::vector<int> sizes;       // cluster multiplicities at the base point
  std::vector<bool> zero;       // clusters indistinguishable from eigenvalue 0
  int kept = 0;                 // clusters entering the reduced polynomial
};

inline ReductionPlan reduction_plan(const rvec& eigs_desc, double gap = 1e-9) {
  ReductionPlan plan;
  plan.sizes = cluster_sizes(eigs_desc, gap);
  int pos = 0;
  for (int s : plan.sizes) {
    double mean = 0;
    for (int k = 0; k < s; ++k) mean += eigs_desc(pos + k);
    mean /= s;
    plan.zero.push_back(std::abs(mean) < gap);
    pos += s;
  }
  int nonzero = 0;
  for (bool z : plan.zero)
    if (!z) ++nonzero;
  plan.kept = std::max(0, nonzero - 1);  // one nonzero cluster is fixed by the trace
  return plan;
}

// Cluster means of a perturbed spectrum under the base-point pattern; smooth
// in the perturbation as long as clusters stay separated.
inline rvec cluster_means(const rvec& eigs_desc, const std::vector<int>& sizes) {
  rvec means(static_cast<int>(sizes.size()));
  int pos = 0;
  for (size_t c = 0; c < sizes.size(); ++c) {
    double m = 0;
    for (int k = 0; k < sizes[c]; ++k) m += eigs_desc(pos + k);
    means(static_cast<int>(c)) = m / sizes[c];
    pos += sizes[c];
  }
  return means;
}

// Reduced characteristic coefficients: the kept nonzero cluster spectra, with
// the largest dropped (its value follows from the unit trace), multiplied out
// into a monic polynomial.
inline rvec reduced_coeffs(const cmat& rho, const ReductionPlan& plan) {
  rvec eigs = eig_hermitian(rho).values;
  rvec means = cluster_means(eigs, plan.sizes);
  rvec roots(plan.kept);
  int filled = 0;
  bool dropped = false;
  for (size_t c = 0; c < plan.sizes.size(); ++c) {
    if (plan.zero[c]) continue;
    if (!dropped) {
      dropped = true;  // first nonzero cluster carries the trace constraint
      continue;
    }
    roots(filled++) = means(static_cast<int>(c));
  }
  return poly_from_roots(roots);
}

// Derivative of reduced_coeffs along drho. Cluster means move by the mean
// diagonal of drho in the cluster's eigenbasis (smooth while clusters stay
// apart); the polynomial then differentiates through its roots, d poly /
// d root_k being minus the monic polynomial of the remaining roots.
inline rvec reduced_coeffs_d(const cmat& rho, const cmat& drho, const ReductionPlan& plan) {
  HermitianEig es = eig_hermitian(rho);
  const int nclusters = static_cast<int>(plan.sizes.size());
  rvec dmeans(nclusters);
  int pos = 0;
  for (int c = 0; c < nclusters; ++c) {
    double dm = 0;
    for (int k = 0; k < plan.sizes[c]; ++k) {
      const cvec v = es.vectors.col(pos + k);
      dm += (v.adjoint() * drho * v)(0, 0).real();
    }
    dmeans(c) = dm / plan.sizes[c];
    pos += plan.sizes[c];
  }
  rvec means = cluster_means(es.values, plan.sizes);
  rvec roots(plan.kept), droots(plan.kept);
  int filled = 0;
  bool dropped = false;
  for (int c = 0; c < nclusters; ++c) {
    if (plan.zero[c]) continue;
    if (!dropped) {
      dropped = true;
      continue;
    }
    roots(filled) = means(c);
    droots(filled) = dmeans(c);
    ++filled;
  }
  rvec dc = rvec::Zero(plan.kept);
  for (int k = 0; k < plan.kept; ++k) {
    rvec rest(plan.kept - 1);
    int w = 0;
    for (int q = 0; q < plan.kept; ++q)
      if (q != k) rest(w++) = roots(q);
    rvec quotient = poly_from_roots(rest);  // monic of degree kept-1
    for (int i = 0; i + 1 < plan.kept; ++i) dc(i) -= droots(k) * quotient(i);
    if (plan.kept >= 1) dc(plan.kept - 1) -= droots(k);  // leading quotient term
  }
  return dc;
}

struct HMatrix {
  rmat h;                // coefficient rows by parameter columns
  bool degenerate = false;
  int rows = 0;
  rvec base_eigs;
};

// Sensitivity of the receiver's eigenvalue data to the encoding parameters.
// Clean spectra differentiate the characteristic coefficients directly; a
// degenerate or singular spectrum switches to the reduced polynomial, whose
// coefficients stay smooth where the full ones lose independence.
inline HMatrix h_matrix(const std::function<cmat(const rvec&)>& rho_of_phi, const rvec& phi0,
                        const std::vector<std::pair<double, double>>& box,
                        ToleranceSettings tol = {}, double degeneracy_gap = 1e-9) {
  HMatrix out;
  cmat base = rho_of_phi(phi0);
  out.base_eigs = eig_hermitian(base).values;
  bool degenerate = false;
  for (int i = 0; i < out.base_eigs.size(); ++i) {
    if (std::abs(out.base_eigs(i)) < degeneracy_gap) degenerate = true;
    if (i > 0 && out.base_eigs(i - 1) - out.base_eigs(i) < degeneracy_gap) degenerate = true;
  }
  out.degenerate = degenerate;
  if (!degenerate) {
    out.h = jacobian_fd([&](const rvec& q) { return char_coeffs(rho_of_phi(q)); }, phi0, box,
                        tol.fd_step);
  } else {
    ReductionPlan plan = reduction_plan(out.base_eigs, degeneracy_gap);
    out.h = jacobian_fd([&](const rvec& q) { return reduced_coeffs(rho_of_phi(q), plan); },
                        phi0, box, tol.fd_step);
  }
  out.rows = static_cast<int>(out.h.rows());
  return out;
}

// Same sensitivity matrix from exact state derivatives. No differencing means
// no noise floor: columns are good to machine precision relative to their own
// scale, and rank decisions can use the analytic tolerances.
inline HMatrix h_matrix(const std::function<cmat(const rvec&)>& rho_of_phi,
                        const std::function<cmat(const rvec&, int)>& drho_of_phi,
                        const rvec& phi0,
                        const std::vector<std::pair<double, double>>& box,
                        double degeneracy_gap = 1e-9) {
  HMatrix out;
  cmat base = rho_of_phi(phi0);
  out.base_eigs = eig_hermitian(base).values;
  bool degenerate = false;
  for (int i = 0; i < out.base_eigs.size(); ++i) {
    if (std::abs(out.base_eigs(i)) < degeneracy_gap) degenerate = true;
    if (i > 0 && out.base_eigs(i - 1) - out.base_eigs(i) < degeneracy_gap) degenerate = true;
  }
  out.degenerate = degenerate;
  const int p = static_cast<int>(box.size());
  ReductionPlan plan;
  if (degenerate) plan = reduction_plan(out.base_eigs, degeneracy_gap);
  for (int j = 0; j < p; ++j) {
    cmat drho = drho_of_phi(phi0, j);
    rvec col = degenerate ? reduced_coeffs_d(base, drho, plan) : char_coeffs_d(base, drho);
    if (out.h.size() == 0) out.h = rmat(col.size(), p);
    out.h.col(j) = col;
  }
  if (out.h.size() == 0) out.h = rmat(0, 0);
  out.rows = static_cast<int>(out.h.rows());
  return out;
}

struct MinCheck {
  int value = 0;
  bool consistent = true;
  std::vector<int> per_sample;
  bool any_degenerate = false;
};

// Parameters that survive into the receiver's eigenvalues, i.e. cannot be
// removed by any local unitary on the receiver side.
inline MinCheck e_ab_min(const std::function<cmat(const rvec&)>& rho_of_phi,
                         const std::vector<std::pair<double, double>>& box, int nsamples = 5,
                         unsigned seed = 1, ToleranceSettings tol = {},
                         double degeneracy_gap = 1e-9) {
  std::vector<int> ranks;
  MinCheck mc;
  for (const rvec& phi : interior_samples(box, nsamples, seed)) {
    HMatrix hm = h_matrix(rho_of_phi, phi, box, tol, degeneracy_gap);
    mc.any_degenerate = mc.any_degenerate || hm.degenerate;
    ranks.push_back(numerical_rank(hm.h, tol.fd_rank_floor(), tol.tol_rel));
  }
  RankCheck rc = collect_ranks(ranks);
  mc.value = box.empty() ? 0 : rc.value;
  mc.consistent = rc.consistent;
  mc.per_sample = rc.per_sample;
  return mc;
}

struct Removability {
  int e_ab = 0;
  int e_ab_min = 0;
  int removable = 0;
};

// Exact-derivative version; resolves directions that differencing buries,
// like the third eigenvalue-borne parameter of the two-pair receiver spectra.
inline MinCheck e_ab_min(const std::function<cmat(const rvec&)>& rho_of_phi,
                         const std::function<cmat(const rvec&, int)>& drho_of_phi,
                         const std::vector<std::pair<double, double>>& box, int nsamples = 5,
                         unsigned seed = 1, ToleranceSettings tol = {},
                         double degeneracy_gap = 1e-9) {
  std::vector<int> ranks;
  MinCheck mc;
  for (const rvec& phi : interior_samples(box, nsamples, seed)) {
    HMatrix hm = h_matrix(rho_of_phi, drho_of_phi, phi, box, degeneracy_gap);
    mc.any_degenerate = mc.any_degenerate || hm.degenerate;
    ranks.push_back(numerical_rank(hm.h, tol.tol_abs, tol.tol_rel));
  }
  RankCheck rc = collect_ranks(ranks);
  mc.value = box.empty() ? 0 : rc.value;
  mc.consistent = rc.consistent;
  mc.per_sample = rc.per_sample;
  return mc;
}

inline Removability removable_count(int e_ab_value, int e_ab_min_value) {
  if (e_ab_min_value > e_ab_value)
    throw std::runtime_error(
        "removable_count: eigenvalue-borne parameters exceed the receiver-visible count");
  return {e_ab_value, e_ab_min_value, e_ab_value - e_ab_min_value};
}

// For each set of n parameter columns: the total weight of all n-th order
// minors they support. A zero weight means those parameters cannot be told
// apart through the receiver's eigenvalues alone.
struct ColumnSubsetSurvey {
  std::vector<std::vector<int>> subsets;
  std::vector<double> weight;
};

inline ColumnSubsetSurvey column_subset_survey(const rmat& h, int n) {
  ColumnSubsetSurvey out;
  const int rows = static_cast<int>(h.rows());
  const int cols = static_cast<int>(h.cols());
  for_each_combination(cols, n, [&](const std::vector<int>& cset) {
    double w = 0;
    for_each_combination(rows, n, [&](const std::vector<int>& rset) {
      w += std::abs(minor_value(h, rset, cset));
    });
    out.subsets.push_back(cset);
    out.weight.push_back(w);
  });
  return out;
}

inline std::vector<std::vector<int>> positive_subsets(const ColumnSubsetSurvey& survey,
                                                      double floor) {
  std::vector<std::vector<int>> out;
  for (size_t k = 0; k < survey.subsets.size(); ++k)
    if (survey.weight[k] > floor) out.push_back(survey.subsets[k]);
  return out;
}

// Threshold through the widest multiplicative gap of a weight list, putting
// the structural zeros below and the genuine minors above. Natural subset
// weights spread over many decades, so no fixed floor separates them; only
// meaningful when such a gap actually exists and the list comes from one
// computation, whose rounding leaves structural zeros tiny but not 0.
inline double largest_gap_split(std::vector<double> w) {
  if (w.size() < 2) return 0;
  for (double& v : w) v = std::max(v, 1e-300);
  std::sort(w.begin(), w.end());
  double best = 1;
  double split = 0;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    const double ratio = w[i + 1] / w[i];
    if (ratio > best) {
      best = ratio;
      split = std::sqrt(w[i] * w[i + 1]);
    }
  }
  return split;
}

// Direct eigenvalue sensitivities, usable as a cross-check when the base
// spectrum is well separated: descending order is then a stable branch match.
inline rmat eigenvalue_jacobian_fd(const std::function<cmat(const rvec&)>& rho_of_phi,
                                   const rvec& phi0,
                                   const std::vector<std::pair<double, double>>& box,
                                   double h = 1e-6, double min_gap = 1e-6) {
  rvec base = eig_hermitian(rho_of_phi(phi0)).values;
  for (int i = 1; i < base.size(); ++i)
    if (base(i - 1) - base(i) < min_gap)
      throw std::domain_error("eigenvalue_jacobian_fd: spectrum too close for branch matching");
  auto f = [&](const rvec& q) {
    rvec v = eig_hermitian(rho_of_phi(q)).values;
    return rvec(v.head(v.size() - 1));  // last one follows from the trace
  };
  return jacobian_fd(f, phi0, box, h);
}

}  // namespace spincorr
