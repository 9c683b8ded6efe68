#include <spincorr/io.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace spincorr {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_integer(const std::string& text) {
  long long v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw std::invalid_argument("not an integer: '" + text + "'");
  return v;
}

}  // namespace

double parse_number(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty number");
  const size_t slash = text.find('/');
  if (slash != std::string::npos) {
    const long long num = parse_integer(trim(text.substr(0, slash)));
    const long long den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return static_cast<double>(num) / static_cast<double>(den);
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v))
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

namespace {

double field_number(const std::string& field, const std::string& text) {
  try {
    return parse_number(text);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(field, e.what());
  }
}

int field_count(const std::string& field, const std::string& text) {
  const double v = field_number(field, text);
  if (v != std::rint(v) || v < 0 || v > 16)
    throw ScenarioError(field, "expected a small nonnegative integer");
  return static_cast<int>(v);
}

rvec field_vector(const std::string& field, const std::string& text) {
  const std::vector<std::string> parts = split_ws(text);
  if (parts.empty()) throw ScenarioError(field, "expected a list of numbers");
  rvec v(static_cast<int>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i)
    v(static_cast<int>(i)) = field_number(field + "[" + std::to_string(i) + "]", parts[i]);
  return v;
}

}  // namespace

LoadedScenario parse_scenario(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ScenarioError("line " + std::to_string(lineno), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (fields.count(key)) throw ScenarioError(key, "repeated key");
    fields[key] = trim(line.substr(eq + 1));
  }

  Scenario s;
  s.lambda_a = rvec();
  s.lambda_b = rvec();
  auto take = [&](const std::string& key) {
    auto it = fields.find(key);
    if (it == fields.end()) return std::string();
    std::string v = it->second;
    fields.erase(it);
    return v;
  };
  auto present = [&](const std::string& key) { return fields.count(key) > 0; };

  if (present("nodes_a")) s.nodes_a = field_count("nodes_a", take("nodes_a"));
  if (present("nodes_c")) s.nodes_c = field_count("nodes_c", take("nodes_c"));
  if (present("nodes_b")) s.nodes_b = field_count("nodes_b", take("nodes_b"));
  if (present("coupling")) s.coupling = field_number("coupling", take("coupling"));
  if (present("lambda_a")) s.lambda_a = field_vector("lambda_a", take("lambda_a"));
  else throw ScenarioError("lambda_a", "missing");
  if (present("lambda_b")) s.lambda_b = field_vector("lambda_b", take("lambda_b"));
  else throw ScenarioError("lambda_b", "missing");
  if (present("lambda_c")) s.lambda_c = field_vector("lambda_c", take("lambda_c"));
  if (present("beta1")) s.beta1 = field_number("beta1", take("beta1"));
  if (present("beta2")) s.beta2 = field_number("beta2", take("beta2"));
  if (present("beta3")) s.beta3 = field_number("beta3", take("beta3"));
  if (present("gamma_c")) s.gamma_c = field_number("gamma_c", take("gamma_c"));
  if (!fields.empty()) throw ScenarioError(fields.begin()->first, "unknown key");

  LoadedScenario out;
  out.value = s;
  for (const ScenarioIssue& issue : validate(s)) {
    if (issue.fatal) {
      const size_t colon = issue.message.find(':');
      const std::string field = colon == std::string::npos ? "scenario"
                                                           : issue.message.substr(0, colon);
      throw ScenarioError(field, trim(issue.message.substr(colon + 1)));
    }
    out.warnings.push_back(issue.message);
  }
  return out;
}

LoadedScenario parse_scenario_text(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

LoadedScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("file", "cannot open '" + path + "'");
  return parse_scenario(in);
}

int TimeGrid::points() const {
  if (step <= 0 || hi < lo) return 0;
  return static_cast<int>(std::lround((hi - lo) / step)) + 1;
}

TimeGrid parse_time_grid(const std::string& text) {
  const size_t c1 = text.find(':');
  const size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("time grid: expected lo:hi:step, got '" + text + "'");
  TimeGrid g;
  g.lo = parse_number(text.substr(0, c1));
  g.hi = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  g.step = parse_number(text.substr(c2 + 1));
  if (g.step <= 0) throw std::invalid_argument("time grid: step must be positive");
  if (g.hi < g.lo) throw std::invalid_argument("time grid: end before start");
  return g;
}

std::string format_real(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_affine_csv(std::ostream& os, const AffineMap& map) {
  for (int i = 0; i < map.mat.rows(); ++i) {
    for (int j = 0; j < map.mat.cols(); ++j) os << format_real(map.mat(i, j)) << ',';
    os << format_real(map.off(i)) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const ScanCurve& curve) {
  for (size_t i = 0; i < curve.t.size(); ++i) {
    const double y = curve.flat ? 0.0 : curve.normalized[i];
    os << format_real(curve.t[i]) << ',' << format_real(y) << '\n';
  }
}

std::string windows_json(const std::vector<TimeWindow>& windows, double threshold,
                         double raw_max) {
  std::ostringstream os;
  os << "{\"threshold\": " << format_real(threshold) << ", \"raw_max\": " << format_real(raw_max)
     << ", \"windows\": [";
  for (size_t i = 0; i < windows.size(); ++i) {
    if (i) os << ", ";
    os << "{\"lo\": " << format_real(windows[i].lo) << ", \"hi\": " << format_real(windows[i].hi)
       << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace spincorr
