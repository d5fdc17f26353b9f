#include "pqharm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace pqharm::io {

namespace {

void require_object(const json& j, const char* what, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) throw FormatError(std::string(what) + ": unknown key '" + item.key() + "'");
  }
}

const json& field(const json& j, const char* what, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

double number(const json& j, const char* what, const char* key) {
  const json& v = field(j, what, key);
  if (!v.is_number()) throw FormatError(std::string(what) + ": '" + key + "' must be a number");
  return v.get<double>();
}

long long integer(const json& j, const char* what, const char* key) {
  const json& v = field(j, what, key);
  if (!v.is_number_integer()) throw FormatError(std::string(what) + ": '" + key + "' must be an integer");
  return v.get<long long>();
}

int parse_index(const std::string& key) {
  int value = 0;
  const auto* end = key.data() + key.size();
  const auto [ptr, ec] = std::from_chars(key.data(), end, value);
  if (key.empty() || ec != std::errc() || ptr != end)
    throw FormatError("series: coefficient key '" + key + "' is not a decimal integer");
  return value;
}

std::complex<double> complex_from_json(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw FormatError("series: coefficient must be a two-element array [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

bool stored(std::complex<double> c) {
  return c.real() != 0 || c.imag() != 0 || std::signbit(c.real()) || std::signbit(c.imag());
}

// Runs a constructor that may throw DomainError and reports it as a schema violation.
template <typename Fn>
auto build(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json to_json(const HarmonicSeriesd& f) {
  json a = json::object();
  json b = json::object();
  for (int k = f.ell() + 1; k <= f.truncation(); ++k)
    if (stored(f.a(k))) a[std::to_string(k)] = complex_to_json(f.a(k));
  for (int k = f.ell(); k <= f.truncation(); ++k)
    if (stored(f.b(k))) b[std::to_string(k)] = complex_to_json(f.b(k));
  json j;
  j["ell"] = f.ell();
  j["truncation"] = f.truncation();
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  return j;
}

HarmonicSeriesd series_from_json(const json& j) {
  constexpr const char* what = "series";
  require_object(j, what, {"ell", "truncation", "a", "b"});
  const long long ell = integer(j, what, "ell");
  const long long n = integer(j, what, "truncation");
  if (ell < 1 || ell > 100000) throw FormatError("series: ell out of range");
  if (n < ell || n > ell + 1000000) throw FormatError("series: truncation must be >= ell");
  HarmonicSeriesd f(static_cast<int>(ell), static_cast<int>(n));
  const auto load = [&](const char* key, bool analytic) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_object()) throw FormatError(std::string("series: '") + key + "' must be an object");
    for (const auto& item : it->items()) {
      const int k = parse_index(item.key());
      const auto c = complex_from_json(item.value());
      build(what, [&] {
        analytic ? f.set_a(k, c) : f.set_b(k, c);
        return 0;
      });
    }
  };
  load("a", true);
  load("b", false);
  return f;
}

json to_json(const OperatorParamsd& op) {
  json j;
  j["p"] = op.pq().p();
  j["q"] = op.pq().q();
  j["ell"] = op.ell();
  j["delta"] = op.delta();
  j["t"] = op.t();
  return j;
}

OperatorParamsd operator_from_json(const json& j) {
  constexpr const char* what = "operator";
  require_object(j, what, {"p", "q", "ell", "delta", "t"});
  const double p = number(j, what, "p");
  const double q = number(j, what, "q");
  const long long ell = integer(j, what, "ell");
  const double delta = number(j, what, "delta");
  const long long t = integer(j, what, "t");
  if (ell < 1 || ell > 100000) throw FormatError("operator: ell out of range");
  if (t < 0 || t > 100000) throw FormatError("operator: t out of range");
  return build(what, [&] { return OperatorParamsd(PQParamsd(p, q), int(ell), delta, int(t)); });
}

json to_json(const ClassParamsd& cp) {
  json j;
  j["operator"] = to_json(cp.op());
  j["sigma"] = cp.sigma();
  return j;
}

ClassParamsd class_from_json(const json& j) {
  constexpr const char* what = "class";
  require_object(j, what, {"operator", "sigma"});
  auto op = operator_from_json(field(j, what, "operator"));
  const double sigma = number(j, what, "sigma");
  return build(what, [&] { return ClassParamsd(op, sigma); });
}

json to_json(const DiskGrid& grid) {
  json j;
  j["r_values"] = grid.r_values();
  j["angles_per_radius"] = grid.angles_per_radius();
  j["r_max"] = grid.r_max();
  return j;
}

DiskGrid grid_from_json(const json& j) {
  constexpr const char* what = "grid";
  require_object(j, what, {"r_values", "radii", "angles_per_radius", "r_max"});
  const long long angles = integer(j, what, "angles_per_radius");
  const double r_max = number(j, what, "r_max");
  if (angles < 1 || angles > (1 << 24)) throw FormatError("grid: angles_per_radius out of range");
  if (j.contains("r_values") == j.contains("radii"))
    throw FormatError("grid: give exactly one of 'r_values' and 'radii'");
  if (j.contains("radii")) {
    const long long radii = integer(j, what, "radii");
    if (radii < 1 || radii > (1 << 24)) throw FormatError("grid: radii out of range");
    return build(what, [&] { return DiskGrid::uniform(int(radii), int(angles), r_max); });
  }
  const json& rv = j.at("r_values");
  if (!rv.is_array()) throw FormatError("grid: 'r_values' must be an array");
  std::vector<double> r;
  for (const auto& v : rv) {
    if (!v.is_number()) throw FormatError("grid: radii must be numbers");
    r.push_back(v.get<double>());
  }
  return build(what, [&] { return DiskGrid(std::move(r), int(angles), r_max); });
}

json to_json(const MembershipReport<double>& r) {
  json j;
  j["margin"] = r.margin;
  j["coefficient_sum"] = r.coefficient_sum;
  j["bound"] = r.bound;
  j["min_re"] = r.min_re;
  j["argmin_z"] = complex_to_json(r.argmin_z);
  j["sense_gap_min"] = r.sense_gap_min;
  j["sufficient_verdict"] = r.sufficient_verdict;
  j["analytic_verdict"] = r.analytic_verdict;
  j["degenerate"] = r.degenerate;
  j["grid"] = to_json(r.grid);
  return j;
}

json to_json(const verify::SuiteConfig& c) {
  json suites = json::array();
  for (auto s : c.suites) suites.push_back(std::string(verify::suite_name(s)));
  json j;
  j["class"] = to_json(c.cp);
  j["trials"] = c.trials;
  j["truncation"] = c.truncation;
  j["grid"] = to_json(c.grid);
  j["seed"] = c.seed;
  j["suites"] = std::move(suites);
  return j;
}

verify::SuiteConfig suite_config_from_json(const json& j) {
  constexpr const char* what = "suite config";
  require_object(j, what, {"class", "trials", "truncation", "grid", "seed", "suites"});
  auto cp = class_from_json(field(j, what, "class"));
  const long long trials = integer(j, what, "trials");
  const long long n = integer(j, what, "truncation");
  auto grid = j.contains("grid") ? grid_from_json(j.at("grid")) : DiskGrid::default_grid();
  const json& seed = field(j, what, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
    throw FormatError("suite config: 'seed' must be a nonnegative integer");
  std::vector<verify::Suite> suites;
  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) throw FormatError("suite config: 'suites' must be an array");
    for (const auto& s : j.at("suites")) {
      if (!s.is_string()) throw FormatError("suite config: suite names must be strings");
      suites.push_back(build(what, [&] { return verify::parse_suite(s.get<std::string>()); }));
    }
  } else {
    suites = verify::all_suites();
  }
  if (trials < 1 || trials > 100000000) throw FormatError("suite config: trials out of range");
  if (n > cp.ell() + 1000000) throw FormatError("suite config: truncation out of range");
  verify::SuiteConfig config{cp, int(trials), int(n), std::move(grid), seed.get<std::uint64_t>(), std::move(suites)};
  build(what, [&] {
    config.validate();
    return 0;
  });
  return config;
}

json to_json(const verify::TrialReport& t) {
  json j;
  j["trial_index"] = t.trial_index;
  j["seed_used"] = t.seed_used;
  j["margin"] = t.margin;
  j["min_re"] = t.min_re ? json(*t.min_re) : json(nullptr);
  j["sense_gap_min"] = t.sense_gap_min ? json(*t.sense_gap_min) : json(nullptr);
  j["verdict"] = std::string(verify::verdict_name(t.verdict));
  if (t.witness_z) j["witness_z"] = complex_to_json(*t.witness_z);
  if (t.classification) j["classification"] = *t.classification;
  if (!t.checks.empty()) {
    json checks;
    for (const auto& [name, value] : t.checks) checks[name] = value;
    j["checks"] = std::move(checks);
  }
  return j;
}

json to_json(const verify::SuiteReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials) trials.push_back(to_json(t));
  json summary;
  summary["pass"] = r.count(verify::Verdict::Pass);
  summary["fail"] = r.count(verify::Verdict::Fail);
  summary["singular"] = r.count(verify::Verdict::Singular);
  if (r.suite == verify::Suite::Convolution) {
    int closed = 0;
    for (const auto& t : r.trials) closed += t.classification == "closed";
    summary["closed"] = closed;
    summary["not_closed"] = int(r.trials.size()) - closed;
  }
  summary["exit_code"] = r.exit_code();
  json config = to_json(r.config);
  config.erase("suites");
  json j;
  j["suite"] = std::string(verify::suite_name(r.suite));
  j["rng"] = std::string(verify::Rng::kName);
  j["config"] = std::move(config);
  j["summary"] = std::move(summary);
  j["trials"] = std::move(trials);
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("'" + path.string() + "': " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

std::string report_file_name(verify::Suite suite, std::uint64_t seed) {
  return "report-" + std::string(verify::suite_name(suite)) + "-" + std::to_string(seed) + ".json";
}

}  // namespace pqharm::io
