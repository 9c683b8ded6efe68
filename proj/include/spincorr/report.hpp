#pragma once

#include <spincorr/nonreducible.hpp>
#include <spincorr/scenario.hpp>

#include <string>
#include <vector>

namespace spincorr {

// Everything one evaluation of a scenario produces, in a form that can be
// audited later: the four integer measures, their exact normalized ratios,
// the sampled angles, and the singular values behind each rank decision.
struct CorrelationReport {
  double t = 0;
  int d_tilde_a = 0;
  int e_aa = 0;
  int rank_transfer = 0;
  int e_ab = 0;
  int e_ab_min = 0;
  int removable = 0;
  Rational e_aa_norm, e_ab_norm, e_ab_min_norm, removable_norm;
  std::string min_path = "standard";  // "reduced" when a degenerate spectrum was met
  bool min_degenerate = false;
  bool consistent = true;  // sampled ranks agreed across the phi set
  int nsamples = 5;
  unsigned seed = 1;
  ToleranceSettings tol;
  std::vector<std::vector<double>> phi_samples;
  std::vector<double> sv_transfer;  // singular values of the transfer matrix
  std::vector<double> sv_jacobian;  // of transfer * sender Jacobian, first sample
  std::vector<double> sv_h;         // of the coefficient sensitivity, first sample
};

CorrelationReport correlation_report(const Scenario& s, const Propagator& prop, double t,
                                     int nsamples = 5, unsigned seed = 1,
                                     ToleranceSettings tol = {});

// JSON document: integers exact, reals as 17-significant-digit decimals,
// rationals as exact strings.
std::string report_json(const CorrelationReport& r);

}  // namespace spincorr
