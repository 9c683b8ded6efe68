#pragma once

#include <spincorr/nonreducible.hpp>
#include <spincorr/scenario.hpp>
#include <spincorr/unitary.hpp>
#include <spincorr/vectorize.hpp>

#include <functional>
#include <limits>
#include <vector>

namespace spincorr {

struct ScanSettings {
  std::vector<int> positions;     // scanned factor positions, 0-based
  double epsilon = std::acos(-1.0) / 50;
  int points_per_dim = 32;
  int minor_order = 2;
};

struct ScanCurve {
  std::vector<double> t;
  std::vector<double> raw;
  double raw_max = 0;
  bool flat = false;
  std::vector<double> normalized;  // empty when flat
};

struct TimeWindow {
  double lo = 0, hi = 0;
};

// Sweeps a grid over a few encoding angles (all the others held at zero) and
// reports, per instant, the worst-case total weight of the chosen minor order
// of the eigenvalue sensitivity matrix. Stencil columns are the exact sender
// state derivatives (differencing drowns the relevant minors, which reach
// 1e-25 and below), assembled once; each instant is then one matrix product
// plus the coefficient sweep.
class MinorScanner {
 public:
  MinorScanner(const rvec& lambda_a, ScanSettings settings)
      : set_(std::move(settings)), s_(static_cast<int>(set_.positions.size())) {
    const int p = set_.points_per_dim;
    npts_ = 1;
    for (int k = 0; k < s_; ++k) npts_ *= p;
    cmat rho0 = diagonal_state(lambda_a);
    xa_ = rmat(15, npts_ * (s_ + 1));
    rvec full = rvec::Zero(12);
    for (int g = 0; g < npts_; ++g) {
      int rest = g;
      for (int k = 0; k < s_; ++k) {
        const double hi = su4_param_upper(set_.positions[k]) - set_.epsilon;
        const double lo = set_.epsilon;
        int idx = rest % p;
        rest /= p;
        full(set_.positions[k]) = p == 1 ? lo : lo + idx * (hi - lo) / (p - 1);
      }
      cmat u = su4_matrix(full);
      xa_.col(col_index(g, 0)) = xhat(cmat(u * rho0 * u.adjoint()));
      for (int k = 0; k < s_; ++k) {
        cmat m = su4_matrix_d(full, set_.positions[k]) * rho0 * u.adjoint();
        xa_.col(col_index(g, 1 + k)) = xhat(cmat(m + m.adjoint()));
      }
      for (int k = 0; k < s_; ++k) full(set_.positions[k]) = 0;
    }
    for_each_combination(3, set_.minor_order,
                         [&](const std::vector<int>& rset) { row_sets_.push_back(rset); });
    for_each_combination(s_, set_.minor_order,
                         [&](const std::vector<int>& cset) { col_sets_.push_back(cset); });
  }

  int grid_points() const { return npts_; }

  // worst case over the angle grid of the summed minor magnitudes
  double objective(const AffineMap& map) const {
    rmat xb = map.mat * xa_;
    double best = std::numeric_limits<double>::infinity();
    rmat h(3, s_);
    for (int g = 0; g < npts_; ++g) {
      Eigen::Matrix4cd base = dense_state(rvec(xb.col(col_index(g, 0)) + map.off));
      for (int k = 0; k < s_; ++k)
        h.col(k) = char_coeffs4_d(base, dense_tangent(xb.col(col_index(g, 1 + k))));
      double total = 0;
      for (const auto& rset : row_sets_)
        for (const auto& cset : col_sets_) total += std::abs(minor_value(h, rset, cset));
      best = std::min(best, total);
    }
    return best;
  }

 private:
  int col_index(int g, int k) const { return g * (s_ + 1) + k; }

  static Eigen::Matrix4cd dense_common(const Eigen::Ref<const rvec>& x) {
    Eigen::Matrix4cd r;
    int a = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++a) {
        r(i, j) = cplx(x(a), x(6 + a));
        r(j, i) = std::conj(r(i, j));
      }
    r(0, 0) = x(12);
    r(1, 1) = x(13);
    r(2, 2) = x(14);
    return r;
  }

  static Eigen::Matrix4cd dense_state(const Eigen::Ref<const rvec>& x) {
    Eigen::Matrix4cd r = dense_common(x);
    r(3, 3) = 1.0 - x(12) - x(13) - x(14);
    return r;
  }

  static Eigen::Matrix4cd dense_tangent(const Eigen::Ref<const rvec>& x) {
    Eigen::Matrix4cd r = dense_common(x);
    r(3, 3) = -x(12) - x(13) - x(14);
    return r;
  }

  ScanSettings set_;
  int s_ = 0;
  int npts_ = 0;
  rmat xa_;
  std::vector<std::vector<int>> row_sets_, col_sets_;
};

inline ScanCurve scan_curve(const std::function<AffineMap(double)>& map_at,
                            const MinorScanner& scanner, double t_lo, double t_hi,
                            double dt = 0.01) {
  ScanCurve curve;
  const int n = static_cast<int>(std::lround((t_hi - t_lo) / dt));
  for (int i = 0; i <= n; ++i) {
    double t = t_lo + i * dt;
    curve.t.push_back(t);
    curve.raw.push_back(scanner.objective(map_at(t)));
  }
  for (double v : curve.raw) curve.raw_max = std::max(curve.raw_max, v);
  curve.flat = !(curve.raw_max > 1e-300);
  if (!curve.flat)
    for (double v : curve.raw) curve.normalized.push_back(v / curve.raw_max);
  return curve;
}

// Maximal stretches where the normalized curve clears the threshold; endpoint
// positions come from the linear interpolant between grid instants. The angle
// lattice occasionally lands on an isolated near-degenerate point and punches
// a dip a sample or two wide into an otherwise solid stretch (moving the
// lattice moves the dip, it never widens). Breaks and islands shorter than
// min_break sit below the resolution the endpoints are reported at, so they
// are bridged away rather than treated as genuine detection gaps.
inline std::vector<TimeWindow> threshold_windows(const ScanCurve& curve,
                                                 double threshold = 0.5,
                                                 double min_break = 0.05) {
  std::vector<TimeWindow> out;
  if (curve.flat) return out;
  const auto& y = curve.normalized;
  const auto& t = curve.t;
  const int n = static_cast<int>(y.size());
  auto cross = [&](int i) {  // threshold position between grid points i, i+1
    return t[i] + (threshold - y[i]) * (t[i + 1] - t[i]) / (y[i + 1] - y[i]);
  };
  bool inside = y[0] >= threshold;
  TimeWindow w;
  if (inside) w.lo = t[0];
  for (int i = 0; i + 1 < n; ++i) {
    if (!inside && y[i] < threshold && y[i + 1] >= threshold) {
      w.lo = cross(i);
      inside = true;
    } else if (inside && y[i] >= threshold && y[i + 1] < threshold) {
      w.hi = cross(i);
      out.push_back(w);
      inside = false;
    }
  }
  if (inside) {
    w.hi = t[n - 1];
    out.push_back(w);
  }
  std::vector<TimeWindow> merged;
  for (const TimeWindow& cur : out) {
    if (!merged.empty() && cur.lo - merged.back().hi < min_break)
      merged.back().hi = cur.hi;
    else
      merged.push_back(cur);
  }
  std::erase_if(merged,
                [&](const TimeWindow& m) { return m.hi - m.lo < min_break; });
  return merged;
}

struct OrderDetection {
  int value = 0;                    // detected parameter count
  std::vector<double> order_scale;  // incremental singular scale per order
};

// Order-by-order probe of the receiver Jacobian over the whole encoding
// region: stop at the first minor order whose region-averaged weight sits at
// the noise floor. The scale of order n is the ratio of consecutive mean
// minor weights, which estimates the n-th singular value and so does not let
// one large direction drag differencing noise above the floor.
inline OrderDetection detect_parameter_count(const AffineMap& map, const Encoder& enc,
                                             int nsamples = 32, unsigned seed = 1,
                                             ToleranceSettings tol = {}) {
  OrderDetection det;
  std::vector<rmat> jacobians;
  for (const rvec& phi : interior_samples(enc.box, nsamples, seed))
    jacobians.push_back(rmat(map.mat * state_jacobian(enc, phi, tol.fd_step)));
  const int max_order =
      static_cast<int>(std::min(jacobians[0].rows(), jacobians[0].cols()));
  double prev = 1;
  for (int n = 1; n <= max_order; ++n) {
    double mean = 0;
    for (const rmat& j : jacobians) mean += minor_abs_sum(j, n);
    mean /= static_cast<double>(jacobians.size());
    const double per_minor =
        mean / (binomial(static_cast<int>(jacobians[0].rows()), n) *
                binomial(static_cast<int>(jacobians[0].cols()), n));
    const double scale = per_minor / prev;
    det.order_scale.push_back(scale);
    const double ref = det.order_scale.front();
    if (scale > std::max(tol.fd_rank_floor(), tol.tol_rel * std::max(ref, 1.0))) {
      det.value = n;
      prev = per_minor;
    } else {
      break;
    }
  }
  return det;
}

}  // namespace spincorr
