#pragma once

#include <spincorr/analytic.hpp>
#include <spincorr/io.hpp>
#include <spincorr/report.hpp>
#include <spincorr/single_excitation.hpp>
#include <spincorr/window_scan.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spincorr {

// One computed quantity against its reference value. Integer cells compare
// exactly, real cells within the stated tolerance.
struct Check {
  std::string label;
  double expected = 0;
  double got = 0;
  double tol = 0;  // 0 means exact integer comparison
  bool ok() const;
};

struct RunResult {
  std::vector<Check> checks;
  bool ok() const;
  std::string diff() const;  // failing lines only
  std::string table() const;  // every line, aligned
};

// Canonical one-node arrangement: sender, two pass-through nodes, receiver.
Scenario one_node_scenario();
// Two-node sender and receiver with no pass-through block.
Scenario two_node_scenario(const rvec& lambda_a, const rvec& lambda_b);

// Single-node tables across the rank triggers, including the receiver
// rotation and the pass-through rotation that move the rank between 3 and 1.
RunResult run_table1(double lambda_a = 0.75, std::optional<double> beta1 = {}, double t = 1,
                     int nsamples = 5, unsigned seed = 1, ToleranceSettings tol = {});

// Two-node-block table: five sender spectra against the four transfer rank
// regimes, the paired-spectrum regime probed with both diagonal orders.
RunResult run_table2(double t = 1, int nsamples = 5, unsigned seed = 1,
                     ToleranceSettings tol = {});

// First positive roots of the four critical-time conditions.
RunResult run_roots();

struct FigureSettings {
  double epsilon = 0;        // 0 keeps the figure's own default
  int points_per_dim = 32;
  TimeGrid grid{0, 10, 0.01};
  double threshold = 0.5;
};

struct FigureResult {
  ScanCurve curve;
  std::vector<TimeWindow> windows;
  RunResult golden;  // window endpoints and curve maximum
  Scenario scenario;
};

FigureResult run_figure(int which, FigureSettings settings = {});

struct LongChainRow {
  double t = 0;
  double f_abs = 0;  // end-to-end transition amplitude magnitude
  double p = 0;      // total excitation-plus-vacuum weight, conserved at 1
  int e_ab = 0;
  int e_ab_min = 0;
};

std::vector<LongChainRow> run_longchain(int nodes, int ntilde_a, int ntilde_b,
                                        const TimeGrid& grid, int nsamples = 5,
                                        unsigned seed = 1, ToleranceSettings tol = {});

void write_longchain_csv(std::ostream& os, const std::vector<LongChainRow>& rows);

}  // namespace spincorr
