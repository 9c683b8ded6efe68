#include <spincorr/runs.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>

namespace spincorr {

bool Check::ok() const {
  if (tol == 0) return expected == got;
  return std::abs(expected - got) <= tol;
}

bool RunResult::ok() const {
  for (const Check& c : checks)
    if (!c.ok()) return false;
  return true;
}

namespace {

std::string check_line(const Check& c) {
  std::ostringstream os;
  os << (c.ok() ? "   ok  " : " FAIL  ") << std::left << std::setw(40) << c.label
     << " expected " << c.expected << "  got " << c.got;
  if (c.tol != 0) os << "  (tol " << c.tol << ")";
  os << '\n';
  return os.str();
}

}  // namespace

std::string RunResult::diff() const {
  std::string out;
  for (const Check& c : checks)
    if (!c.ok()) out += check_line(c);
  return out;
}

std::string RunResult::table() const {
  std::string out;
  for (const Check& c : checks) out += check_line(c);
  return out;
}

Scenario one_node_scenario() {
  Scenario s;
  s.nodes_a = 1;
  s.nodes_c = 2;
  s.nodes_b = 1;
  rvec la(2), lb(2), lc(4);
  la << 0.75, 0.25;
  lb << 0.75, 0.25;
  lc << 0.5, 0.25, 0.125, 0.125;
  s.lambda_a = la;
  s.lambda_b = lb;
  s.lambda_c = lc;
  return s;
}

Scenario two_node_scenario(const rvec& lambda_a, const rvec& lambda_b) {
  Scenario s;
  s.nodes_a = 2;
  s.nodes_c = 0;
  s.nodes_b = 2;
  s.lambda_a = lambda_a;
  s.lambda_b = lambda_b;
  s.lambda_c.reset();
  return s;
}

namespace {

rvec vec2(double a) {
  rvec v(2);
  v << a, 1 - a;
  return v;
}

rvec vec4(double a, double b, double c, double d) {
  rvec v(4);
  v << a, b, c, d;
  return v;
}

double ratio(const Rational& r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

}  // namespace

RunResult run_table1(double lambda_a, std::optional<double> beta1, double t, int nsamples,
                     unsigned seed, ToleranceSettings tol) {
  const double pi = std::acos(-1.0);
  RunResult res;
  const std::vector<std::pair<std::string, double>> columns = {
      {"lam_a=" + format_real(lambda_a), lambda_a}, {"lam_a=1/2", 0.5}};

  // sender-side count first: 2 unless the sender spectrum is flat
  for (const auto& [tag, la] : columns) {
    RankCheck aa = e_aa(su2_encoder(la), nsamples, seed, tol);
    const int expect_aa = la == 0.5 ? 0 : 2;
    res.checks.push_back({"e_aa " + tag, double(expect_aa), double(aa.value), 0});
    res.checks.push_back({"e_aa_norm " + tag, ratio(normalized_value(expect_aa, 2)),
                          ratio(normalized_value(aa.value, 2)), 0});
  }

  struct Variant {
    std::string tag;
    Scenario s;
    int expect_rank;
  };
  std::vector<Variant> variants;
  if (beta1) {
    Scenario s = one_node_scenario();
    s.beta1 = *beta1;
    const int expect = std::abs(*beta1 - pi / 4) < 1e-12 ? 1 : 3;
    variants.push_back({"beta1", s, expect});
  } else {
    variants.push_back({"generic", one_node_scenario(), 3});
    Scenario flat_b = one_node_scenario();
    flat_b.lambda_b = vec2(0.5);
    variants.push_back({"lam_b=1/2", flat_b, 1});
    Scenario tuned = one_node_scenario();
    tuned.lambda_c = vec4(0.375, 0.125, 0.375, 0.125);  // the two right weights sum to 1/2
    variants.push_back({"tuned pass-through", tuned, 1});
    Scenario rot = one_node_scenario();
    rot.beta1 = pi / 4;
    variants.push_back({"beta1=pi/4", rot, 1});
    Scenario revived = tuned;
    revived.gamma_c = pi / 4;  // unequal left weights re-open the channel
    variants.push_back({"gamma revival", revived, 3});
  }

  for (Variant& v : variants) {
    Propagator prop = scenario_propagator(v.s);
    AffineMap map = scenario_map(v.s, prop, t);
    res.checks.push_back(
        {"rank " + v.tag, double(v.expect_rank), double(rank_transfer(map, tol)), 0});
    for (const auto& [tag, la] : columns) {
      const int expect = la == 0.5 ? 0 : (v.expect_rank >= 3 ? 2 : 1);
      RankCheck ab = e_ab(map, su2_encoder(la), nsamples, seed, tol);
      res.checks.push_back(
          {"e_ab " + v.tag + " " + tag, double(expect), double(ab.value), 0});
      res.checks.push_back({"e_ab_norm " + v.tag + " " + tag,
                            ratio(normalized_value(expect, 2)),
                            ratio(normalized_value(ab.value, 2)), 0});
    }
  }
  return res;
}

RunResult run_table2(double t, int nsamples, unsigned seed, ToleranceSettings tol) {
  RunResult res;

  struct Row {
    std::string tag;
    rvec lambda_a;
    int e_aa;
  };
  const std::vector<Row> rows = {
      {"distinct", vec4(2.0 / 5, 3.0 / 10, 1.0 / 5, 1.0 / 10), 12},
      {"one pair", vec4(3.0 / 10, 3.0 / 10, 1.0 / 4, 3.0 / 20), 10},
      {"two pairs", vec4(3.0 / 10, 3.0 / 10, 1.0 / 5, 1.0 / 5), 8},
      {"triple", vec4(4.0 / 15, 4.0 / 15, 4.0 / 15, 1.0 / 5), 6},
      {"flat", vec4(0.25, 0.25, 0.25, 0.25), 0},
  };

  struct Column {
    std::string tag;
    rvec lambda_b;
    int rank;
    std::array<int, 5> e_ab;
  };
  const std::vector<Column> cols = {
      {"rank15", vec4(0.5, 0.25, 3.0 / 16, 1.0 / 16), 15, {12, 10, 8, 6, 0}},
      {"rank11", vec4(7.0 / 20, 3.0 / 10, 1.0 / 5, 3.0 / 20), 11, {11, 10, 8, 6, 0}},
      {"rank9 paired", vec4(3.0 / 8, 3.0 / 8, 1.0 / 8, 1.0 / 8), 9, {9, 9, 8, 6, 0}},
      {"rank9 interleaved", vec4(3.0 / 10, 1.0 / 5, 3.0 / 10, 1.0 / 5), 9, {9, 9, 8, 6, 0}},
      {"rank7", vec4(0.25, 0.25, 0.25, 0.25), 7, {7, 7, 6, 5, 0}},
  };

  std::vector<Encoder> encoders;
  for (size_t i = 0; i < rows.size(); ++i) {
    encoders.push_back(su4_encoder(rows[i].lambda_a, seed));
    RankCheck aa = e_aa(encoders.back(), nsamples, seed, tol);
    res.checks.push_back(
        {"e_aa " + rows[i].tag, double(rows[i].e_aa), double(aa.value), 0});
  }

  for (const Column& col : cols) {
    Scenario s = two_node_scenario(rows[0].lambda_a, col.lambda_b);
    Propagator prop = scenario_propagator(s);
    AffineMap map = scenario_map(s, prop, t);
    res.checks.push_back({"rank " + col.tag, double(col.rank), double(rank_transfer(map, tol)), 0});
    for (size_t i = 0; i < rows.size(); ++i) {
      RankCheck ab = e_ab(map, encoders[i], nsamples, seed, tol);
      res.checks.push_back({"e_ab " + col.tag + " " + rows[i].tag, double(col.e_ab[i]),
                            double(ab.value), 0});
      res.checks.push_back({"e_ab_norm " + col.tag + " " + rows[i].tag,
                            ratio(normalized_value(col.e_ab[i], 12)),
                            ratio(normalized_value(ab.value, 12)), 0});
    }
  }
  return res;
}

namespace {

void root_checks(RunResult& res, const std::string& tag,
                 const std::function<double(double)>& f, double lo, double hi,
                 double expected) {
  std::vector<double> roots = find_roots(f, lo, hi);
  if (roots.empty()) {
    res.checks.push_back({"root " + tag, expected, std::nan(""), 1e-3});
    return;
  }
  const double root = roots.front();
  res.checks.push_back({"root " + tag, expected, root, 1e-3});
  double fmax = 0;
  for (double x = lo; x <= hi; x += 0.1) fmax = std::max(fmax, std::abs(f(x)));
  res.checks.push_back({"residual " + tag, 0.0, std::abs(f(root)), 1e-9 * (1 + fmax)});
}

}  // namespace

RunResult run_roots() {
  RunResult res;
  root_checks(res, "coupling function", [](double t) { return one_node_r(t); }, 0.5, 12.5,
              9.070);
  root_checks(res, "det factor minus", [](double t) { return two_node_f_minus(t); }, 0.5,
              12.5, 11.909);
  root_checks(res, "det factor plus", [](double t) { return two_node_f_plus(t); }, 0.5, 12.5,
              5.952);
  root_checks(res, "window edge",
              [](double t) {
                return std::abs(one_node_m(t, 0.75, 0.75, 0.25, 0.25, 0.25)) - 1;
              },
              0.1, 5.0, 2.726);
  return res;
}

FigureResult run_figure(int which, FigureSettings settings) {
  const double pi = std::acos(-1.0);
  FigureResult fig;
  ScanSettings scan;
  std::vector<TimeWindow> expect_windows;
  double expect_max = 0;
  if (which == 1) {
    fig.scenario = two_node_scenario(vec4(5.0 / 16, 5.0 / 16, 5.0 / 16, 1.0 / 16),
                                     vec4(0.25, 0.25, 0.25, 0.25));
    scan.positions = {1, 5};
    scan.minor_order = 2;
    scan.epsilon = settings.epsilon > 0 ? settings.epsilon : pi / 160;
    expect_windows = {{3.781, 4.827}, {7.082, 8.678}};
    expect_max = 1.247e-11;
  } else if (which == 2) {
    fig.scenario = two_node_scenario(vec4(4.0 / 15, 4.0 / 15, 4.0 / 15, 1.0 / 5),
                                     vec4(4.0 / 15, 4.0 / 15, 7.0 / 30, 7.0 / 30));
    scan.positions = {1, 3, 5};
    scan.minor_order = 3;
    scan.epsilon = settings.epsilon > 0 ? settings.epsilon : pi / 50;
    expect_windows = {{3.257, 4.520}, {7.233, 7.983}};
    expect_max = 2.292e-25;
  } else {
    throw std::invalid_argument("figure: only 1 and 2 exist");
  }
  scan.points_per_dim = settings.points_per_dim;

  MinorScanner scanner(fig.scenario.lambda_a, scan);
  Propagator prop = scenario_propagator(fig.scenario);
  fig.curve = scan_curve([&](double t) { return scenario_map(fig.scenario, prop, t); },
                         scanner, settings.grid.lo, settings.grid.hi, settings.grid.step);
  fig.windows = threshold_windows(fig.curve, settings.threshold);

  fig.golden.checks.push_back({"window count", double(expect_windows.size()),
                               double(fig.windows.size()), 0});
  if (fig.windows.size() == expect_windows.size()) {
    for (size_t i = 0; i < expect_windows.size(); ++i) {
      const std::string tag = " window " + std::to_string(i + 1);
      fig.golden.checks.push_back(
          {"lo" + tag, expect_windows[i].lo, fig.windows[i].lo, 0.05});
      fig.golden.checks.push_back(
          {"hi" + tag, expect_windows[i].hi, fig.windows[i].hi, 0.05});
    }
  }
  fig.golden.checks.push_back(
      {"curve maximum", expect_max, fig.curve.raw_max, 0.1 * expect_max});
  return fig;
}

std::vector<LongChainRow> run_longchain(int nodes, int ntilde_a, int ntilde_b,
                                        const TimeGrid& grid, int nsamples, unsigned seed,
                                        ToleranceSettings tol) {
  if (ntilde_a < 1 || ntilde_b < 1 || nodes < ntilde_a + ntilde_b)
    throw std::invalid_argument("long chain: need nodes >= sender + receiver slots >= 2");
  SectorChain chain = sector_chain(nodes);
  AmplitudeChart chart{ntilde_a};
  const cvec alpha = chart.amplitudes(interior_samples(chart.box(), 1, seed).front());

  std::vector<LongChainRow> rows;
  for (int i = 0; i < grid.points(); ++i) {
    LongChainRow row;
    row.t = grid.at(i);
    row.f_abs = std::abs(end_to_end_amplitude(chain, row.t));
    cvec psi = cvec::Zero(nodes);
    for (int k = 1; k <= ntilde_a; ++k) psi += alpha(k) * evolved_column(chain, k, row.t);
    row.p = std::norm(alpha(0)) + psi.squaredNorm();
    cmat rblock = transition_block(chain, ntilde_a, ntilde_b, row.t);
    row.e_ab = e_ab_long(rblock, ntilde_a, tol).value;
    row.e_ab_min = e_ab_min_long(rblock, ntilde_a, nsamples, seed, tol).value;
    rows.push_back(row);
  }
  return rows;
}

void write_longchain_csv(std::ostream& os, const std::vector<LongChainRow>& rows) {
  os << "t,f_abs,p,e_ab,e_ab_min\n";
  for (const LongChainRow& r : rows)
    os << format_real(r.t) << ',' << format_real(r.f_abs) << ',' << format_real(r.p) << ','
       << r.e_ab << ',' << r.e_ab_min << '\n';
}

}  // namespace spincorr
