// Command line front end. Every subcommand prints a human-readable summary to
// stdout and can mirror a machine payload (json or csv) to --out.
#include <CLI11.hpp>

#include <spincorr/io.hpp>
#include <spincorr/nonreducible.hpp>
#include <spincorr/report.hpp>
#include <spincorr/runs.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace spincorr;

namespace {

// stdout unless --out was given
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    os = &file;
  }
};

std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  return format_real(x);
}

void write_checks_json(std::ostream& os, const RunResult& res) {
  os << "{\n  \"ok\": " << (res.ok() ? "true" : "false") << ",\n  \"checks\": [\n";
  for (size_t i = 0; i < res.checks.size(); ++i) {
    const Check& c = res.checks[i];
    os << "    {\"label\": \"" << c.label << "\", \"expected\": " << json_number(c.expected)
       << ", \"got\": " << json_number(c.got) << ", \"tol\": " << json_number(c.tol)
       << ", \"ok\": " << (c.ok() ? "true" : "false") << "}"
       << (i + 1 < res.checks.size() ? "," : "") << '\n';
  }
  os << "  ]\n}\n";
}

void write_checks_csv(std::ostream& os, const RunResult& res) {
  os << "label,expected,got,tol,ok\n";
  for (const Check& c : res.checks)
    os << '"' << c.label << "\"," << format_real(c.expected) << ',' << format_real(c.got)
       << ',' << format_real(c.tol) << ',' << (c.ok() ? 1 : 0) << '\n';
}

int finish_golden(const RunResult& res, const std::string& out, const std::string& format) {
  std::cout << res.table() << (res.ok() ? "PASS" : "FAIL") << '\n';
  if (!out.empty()) {
    Sink sink;
    sink.open(out);
    if (format == "csv") write_checks_csv(*sink.os, res);
    else write_checks_json(*sink.os, res);
  }
  return res.ok() ? 0 : 1;
}

Scenario load_or(const std::string& path, const Scenario& fallback) {
  if (path.empty()) return fallback;
  LoadedScenario loaded = load_scenario(path);
  for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
  return loaded.value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"informational correlation of spin-1/2 chains"};
  app.require_subcommand(1);

  ToleranceSettings tol;
  std::string time_grid_text;
  int region_grid = 32;
  double epsilon = 0;  // 0 keeps each command's own default
  double threshold = 0.5;
  unsigned seed = 1;
  std::string out_path;
  std::string format = "json";
  app.add_option("--tol-abs", tol.tol_abs, "absolute tolerance for rank decisions");
  app.add_option("--tol-rel", tol.tol_rel, "relative tolerance for rank decisions");
  app.add_option("--fd-step", tol.fd_step, "finite difference step");
  app.add_option("--time-grid", time_grid_text, "time grid as lo:hi:step");
  app.add_option("--region-grid", region_grid, "points per parameter dimension in scans");
  app.add_option("--epsilon", epsilon, "margin of the scanned parameter region");
  auto* opt_threshold =
      app.add_option("--threshold", threshold, "normalized detection threshold; for scan, an absolute weight floor");
  app.add_option("--seed", seed, "seed for sampled encoding parameters");
  app.add_option("--out", out_path, "write the machine payload to this file");
  app.add_option("--format", format, "payload format")
      ->check(CLI::IsMember({"json", "csv"}));

  double t1_lambda_a = 0.75, t1_beta1 = 0, t1_t = 1;
  int nsamples = 5;
  auto* sub_t1 = app.add_subcommand("table1", "one-node golden table");
  sub_t1->fallthrough();
  sub_t1->add_option("--lambda-a", t1_lambda_a, "sender eigenvalue");
  auto* opt_beta1 = sub_t1->add_option("--beta1", t1_beta1, "receiver rotation angle");
  sub_t1->add_option("--t", t1_t, "evaluation time");
  sub_t1->add_option("--nsamples", nsamples, "encoding samples per rank decision");

  double t2_t = 1;
  auto* sub_t2 = app.add_subcommand("table2", "two-node golden table");
  sub_t2->fallthrough();
  sub_t2->add_option("--t", t2_t, "evaluation time");
  sub_t2->add_option("--nsamples", nsamples, "encoding samples per rank decision");

  auto* sub_roots = app.add_subcommand("roots", "critical times of the closed forms");
  sub_roots->fallthrough();

  int fig_which = 1;
  auto* sub_fig = app.add_subcommand("figure", "minimized minor scan over time");
  sub_fig->fallthrough();
  sub_fig->add_option("which", fig_which, "figure number")->check(CLI::IsMember({1, 2}));

  int lc_nodes = 100, lc_sender = 1, lc_receiver = 1;
  auto* sub_lc = app.add_subcommand("longchain", "single excitation sweep");
  sub_lc->fallthrough();
  sub_lc->add_option("--nodes", lc_nodes, "chain length");
  sub_lc->add_option("--sender", lc_sender, "sender nodes carrying amplitude");
  sub_lc->add_option("--receiver", lc_receiver, "receiver nodes read out");
  sub_lc->add_option("--nsamples", nsamples, "encoding samples per rank decision");

  std::string rep_scenario;
  double rep_t = 1;
  auto* sub_rep = app.add_subcommand("report", "full correlation quartet for a scenario");
  sub_rep->fallthrough();
  sub_rep->add_option("--scenario", rep_scenario, "scenario file, default one-node chain");
  sub_rep->add_option("--t", rep_t, "evaluation time");
  sub_rep->add_option("--nsamples", nsamples, "encoding samples per rank decision");

  std::string scan_scenario;
  double scan_t = 4;
  int scan_order = 2;
  auto* sub_scan = app.add_subcommand("scan", "parameter subsets visible in the spectrum");
  sub_scan->fallthrough();
  sub_scan->add_option("--scenario", scan_scenario, "scenario file, default two-node chain");
  sub_scan->add_option("--t", scan_t, "evaluation time");
  sub_scan->add_option("--order", scan_order, "minor order / subset size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sub_t1) {
      std::optional<double> beta1;
      if (opt_beta1->count()) beta1 = t1_beta1;
      return finish_golden(run_table1(t1_lambda_a, beta1, t1_t, nsamples, seed, tol),
                           out_path, format);
    }
    if (*sub_t2)
      return finish_golden(run_table2(t2_t, nsamples, seed, tol), out_path, format);
    if (*sub_roots) return finish_golden(run_roots(), out_path, format);
    if (*sub_fig) {
      FigureSettings fs;
      fs.epsilon = epsilon;
      fs.points_per_dim = region_grid;
      fs.threshold = threshold;
      if (!time_grid_text.empty()) fs.grid = parse_time_grid(time_grid_text);
      FigureResult fig = run_figure(fig_which, fs);
      std::cout << fig.golden.table() << (fig.golden.ok() ? "PASS" : "FAIL") << '\n';
      if (!out_path.empty()) {
        Sink sink;
        sink.open(out_path);
        if (format == "csv") write_curve_csv(*sink.os, fig.curve);
        else *sink.os << windows_json(fig.windows, fs.threshold, fig.curve.raw_max) << '\n';
      }
      return fig.golden.ok() ? 0 : 1;
    }
    if (*sub_lc) {
      TimeGrid grid{0, 10, 0.1};
      if (!time_grid_text.empty()) grid = parse_time_grid(time_grid_text);
      std::vector<LongChainRow> rows =
          run_longchain(lc_nodes, lc_sender, lc_receiver, grid, nsamples, seed, tol);
      Sink sink;
      sink.open(out_path);
      if (format == "csv") {
        *sink.os << "# seed " << seed << '\n';
        write_longchain_csv(*sink.os, rows);
      } else {
        *sink.os << "{\n  \"seed\": " << seed << ",\n  \"rows\": [\n";
        for (size_t i = 0; i < rows.size(); ++i) {
          const LongChainRow& r = rows[i];
          *sink.os << "    {\"t\": " << format_real(r.t) << ", \"f_abs\": "
                   << format_real(r.f_abs) << ", \"p\": " << format_real(r.p)
                   << ", \"e_ab\": " << r.e_ab << ", \"e_ab_min\": " << r.e_ab_min << "}"
                   << (i + 1 < rows.size() ? "," : "") << '\n';
        }
        *sink.os << "  ]\n}\n";
      }
      if (!out_path.empty())
        std::cout << rows.size() << " rows written to " << out_path << '\n';
      return 0;
    }
    if (*sub_rep) {
      Scenario s = load_or(rep_scenario, one_node_scenario());
      Propagator prop = scenario_propagator(s);
      CorrelationReport rep = correlation_report(s, prop, rep_t, nsamples, seed, tol);
      Sink sink;
      sink.open(out_path);
      if (format == "csv") {
        *sink.os << "key,value\n"
                 << "t," << format_real(rep.t) << '\n'
                 << "e_aa," << rep.e_aa << '\n'
                 << "rank_transfer," << rep.rank_transfer << '\n'
                 << "e_ab," << rep.e_ab << '\n'
                 << "e_ab_min," << rep.e_ab_min << '\n'
                 << "removable," << rep.removable << '\n';
      } else {
        *sink.os << report_json(rep) << '\n';
      }
      if (!out_path.empty())
        std::cout << "e_aa " << rep.e_aa << "  rank " << rep.rank_transfer << "  e_ab "
                  << rep.e_ab << "  e_ab_min " << rep.e_ab_min << "  removable "
                  << rep.removable << '\n';
      return 0;
    }
    if (*sub_scan) {
      Scenario fallback = two_node_scenario(
          (rvec(4) << 5.0 / 16, 5.0 / 16, 5.0 / 16, 1.0 / 16).finished(),
          (rvec(4) << 0.25, 0.25, 0.25, 0.25).finished());
      Scenario s = load_or(scan_scenario, fallback);
      require_valid(s);
      Propagator prop = scenario_propagator(s);
      AffineMap map = scenario_map(s, prop, scan_t);
      Encoder enc = scenario_encoder(s, seed);
      auto rho_of = [&](const rvec& phi) { return receiver_state(map, enc.state(phi), s.nb()); };
      auto drho_of = [&](const rvec& phi, int j) {
        return unvectorize_traceless(rvec(map.mat * xhat(enc.state_d(phi, j))), s.nb());
      };
      const rvec phi0 = interior_samples(enc.box, 1, seed).front();
      HMatrix hm = h_matrix(rho_of, drho_of, phi0, enc.box);
      ColumnSubsetSurvey survey = column_subset_survey(hm.h, scan_order);
      const double floor =
          opt_threshold->count() ? threshold : largest_gap_split(survey.weight);
      Sink sink;
      sink.open(out_path);
      if (format == "csv") {
        *sink.os << "params,weight,kept\n";
        for (size_t k = 0; k < survey.subsets.size(); ++k) {
          std::string params;
          for (int c : survey.subsets[k])
            params += (params.empty() ? "" : " ") + std::to_string(c + 1);
          *sink.os << '"' << params << "\"," << format_real(survey.weight[k]) << ','
                   << (survey.weight[k] > floor ? 1 : 0) << '\n';
        }
      } else {
        *sink.os << "{\n  \"t\": " << format_real(scan_t) << ",\n  \"order\": " << scan_order
                 << ",\n  \"seed\": " << seed << ",\n  \"degenerate\": "
                 << (hm.degenerate ? "true" : "false") << ",\n  \"floor\": "
                 << format_real(floor) << ",\n  \"subsets\": [\n";
        for (size_t k = 0; k < survey.subsets.size(); ++k) {
          *sink.os << "    {\"params\": [";
          for (size_t j = 0; j < survey.subsets[k].size(); ++j)
            *sink.os << survey.subsets[k][j] + 1
                     << (j + 1 < survey.subsets[k].size() ? ", " : "");
          *sink.os << "], \"weight\": " << format_real(survey.weight[k]) << ", \"kept\": "
                   << (survey.weight[k] > floor ? "true" : "false") << "}"
                   << (k + 1 < survey.subsets.size() ? "," : "") << '\n';
        }
        *sink.os << "  ]\n}\n";
      }
      if (!out_path.empty())
        std::cout << survey.subsets.size() << " subsets written to " << out_path << '\n';
      return 0;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
