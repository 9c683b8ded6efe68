#pragma once

#include <spincorr/scenario.hpp>
#include <spincorr/transfer.hpp>
#include <spincorr/window_scan.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace spincorr {

// Error from the scenario text format, keyed by the offending field so the
// message pins the exact spot (for lists, field[index]).
struct ScenarioError : std::runtime_error {
  std::string field;
  ScenarioError(const std::string& f, const std::string& msg)
      : std::runtime_error(f + ": " + msg), field(f) {}
};

struct LoadedScenario {
  Scenario value;
  std::vector<std::string> warnings;
};

// One number, either a decimal or an exact rational like 5/16. Throws
// std::invalid_argument on anything else.
double parse_number(const std::string& text);

// Flat key = value lines, # starts a comment, spectra are whitespace-separated
// lists. Unknown or repeated keys are errors; block sizes and sums are checked
// after parsing and fatal findings throw, soft findings come back as warnings.
LoadedScenario parse_scenario(std::istream& in);
LoadedScenario parse_scenario_text(const std::string& text);
LoadedScenario load_scenario(const std::string& path);

struct TimeGrid {
  double lo = 0, hi = 10, step = 0.01;
  int points() const;
  double at(int i) const { return lo + i * step; }
};

// "lo:hi:step", each part a number in the scenario format.
TimeGrid parse_time_grid(const std::string& text);

// Round-trip exact decimal form, 17 significant digits.
std::string format_real(double x);

// Rows of the linear part with the offset appended as a last column.
void write_affine_csv(std::ostream& os, const AffineMap& map);

// Two columns: instant, normalized scan value (zeros when the curve is flat).
void write_curve_csv(std::ostream& os, const ScanCurve& curve);

std::string windows_json(const std::vector<TimeWindow>& windows, double threshold,
                         double raw_max);

}  // namespace spincorr
