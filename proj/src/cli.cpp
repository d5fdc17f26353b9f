#include "pqharm/cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "pqharm/classcheck.hpp"
#include "pqharm/io.hpp"
#include "pqharm/operator.hpp"
#include "pqharm/pq.hpp"
#include "pqharm/verify.hpp"

namespace pqharm::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

struct Options {
  std::optional<double> p, q, x, u, mu, rmax;
  std::string params, class_path, out, part = "analytic", grid, suites, format;
  std::vector<std::string> in;
  std::optional<int> kappa, trials, truncation;
  std::optional<std::uint64_t> seed;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool use_color(const std::ostream& out) {
  return std::getenv("NO_COLOR") == nullptr && &out == &std::cout && ::isatty(STDOUT_FILENO);
}

std::string paint(bool color, bool ok, const std::string& text) {
  if (!color) return text;
  return std::string(ok ? "\x1b[32m" : "\x1b[31m") + text + "\x1b[0m";
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void emit(const json& j, const Options& o, std::ostream& out) {
  if (o.out.empty())
    out << j.dump(2) << '\n';
  else
    io::write_json_file(o.out, j);
}

const std::string& single_input(const Options& o) {
  if (o.in.size() != 1) throw UsageError("expected exactly one --in file");
  return o.in.front();
}

ClassParamsd load_class(const Options& o) {
  if (o.class_path.empty()) throw UsageError("--class is required");
  return io::class_from_json(io::read_json_file(o.class_path));
}

DiskGrid grid_from_flags(const Options& o, int default_radii, int default_angles) {
  int radii = default_radii, angles = default_angles;
  if (!o.grid.empty()) {
    const auto x = o.grid.find('x');
    try {
      std::size_t used1 = 0, used2 = 0;
      if (x == std::string::npos) throw std::invalid_argument("no x");
      radii = std::stoi(o.grid.substr(0, x), &used1);
      angles = std::stoi(o.grid.substr(x + 1), &used2);
      if (used1 != x || used2 != o.grid.size() - x - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--grid expects RxA, e.g. 64x256");
    }
  }
  return DiskGrid::uniform(radii, angles, o.rmax.value_or(0.995));
}

int cmd_bracket(const Options& o, std::ostream& out) {
  if (!o.q || !o.x) throw UsageError("bracket needs --q and --x");
  const double p = o.p.value_or(1.0);
  const double value = bracket_pq(*o.x, PQParamsd(p, *o.q));
  if (o.format == "json") {
    json j;
    j["p"] = p;
    j["q"] = *o.q;
    j["x"] = *o.x;
    j["bracket"] = value;
    emit(j, o, out);
  } else {
    out << fmt_g(value) << '\n';
  }
  return 0;
}

int cmd_apply(const Options& o, std::ostream& out) {
  if (o.params.empty()) throw UsageError("--params is required");
  const auto op = io::operator_from_json(io::read_json_file(o.params));
  const auto f = io::series_from_json(io::read_json_file(single_input(o)));
  emit(io::to_json(apply_operator(f, op)), o, out);
  return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto cp = load_class(o);
  const auto f = io::series_from_json(io::read_json_file(single_input(o)));
  const auto report = check_membership(f, cp, grid_from_flags(o, 64, 256));
  if (o.format == "text") {
    const bool color = use_color(out);
    out << "margin          " << fmt_g(report.margin) << "  "
        << paint(color, report.sufficient_verdict, report.sufficient_verdict ? "sufficient" : "not certified") << '\n'
        << "min Re(A/B)     " << fmt_g(report.min_re) << "  "
        << paint(color, report.analytic_verdict, report.analytic_verdict ? ">= sigma" : "< sigma") << '\n'
        << "min sense gap   " << fmt_g(report.sense_gap_min) << '\n';
    if (report.degenerate) out << "warning: degenerate class (ell - 2 - sigma <= 0)\n";
  } else {
    emit(io::to_json(report), o, out);
  }
  return 0;
}

int cmd_extremal(const Options& o, std::ostream& out) {
  const auto cp = load_class(o);
  if (!o.kappa) throw UsageError("--kappa is required");
  Part part;
  if (o.part == "analytic")
    part = Part::Analytic;
  else if (o.part == "co-analytic")
    part = Part::CoAnalytic;
  else
    throw UsageError("--part must be 'analytic' or 'co-analytic'");
  const int n = o.truncation.value_or(std::max(*o.kappa, cp.ell()));
  const auto weights = ExtremalWeights<double>::single(cp.ell(), n, *o.kappa, part, o.mu.value_or(1.0));
  emit(io::to_json(extremal_function(weights, cp)), o, out);
  return 0;
}

int cmd_convolve(const Options& o, std::ostream& out) {
  if (o.in.size() != 2) throw UsageError("convolve needs two --in files");
  const auto f = io::series_from_json(io::read_json_file(o.in[0]));
  const auto m = io::series_from_json(io::read_json_file(o.in[1]));
  emit(io::to_json(convolve(f, m)), o, out);
  return 0;
}

int cmd_bernardi(const Options& o, std::ostream& out) {
  if (!o.u) throw UsageError("--u is required");
  const auto f = io::series_from_json(io::read_json_file(single_input(o)));
  emit(io::to_json(bernardi(f, *o.u)), o, out);
  return 0;
}

std::vector<verify::Suite> parse_suite_list(const std::string& list) {
  std::vector<verify::Suite> suites;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) suites.push_back(verify::parse_suite(name));
  if (suites.empty()) throw UsageError("--suites is empty");
  return suites;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::optional<verify::SuiteConfig> config;
  if (!o.in.empty()) {
    config = io::suite_config_from_json(io::read_json_file(single_input(o)));
  } else {
    config = verify::SuiteConfig{load_class(o), 200, 12, DiskGrid::default_grid(), 42, verify::all_suites()};
  }
  if (o.trials) config->trials = *o.trials;
  if (o.truncation) config->truncation = *o.truncation;
  if (o.seed) config->seed = *o.seed;
  if (!o.grid.empty() || o.rmax) config->grid = grid_from_flags(o, 64, 256);
  if (!o.suites.empty()) config->suites = parse_suite_list(o.suites);
  config->validate();

  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw FormatError("--out '" + dir.string() + "' is not a directory");

  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  int exit_code = 0;
  json summary = json::array();
  const bool color = use_color(out);
  for (auto suite : config->suites) {
    const auto report = verify::run_suite(*config, suite, threads);
    const auto path = dir / io::report_file_name(suite, config->seed);
    io::write_json_file(path, io::to_json(report));
    const int code = report.exit_code();
    exit_code = (code == 2 || exit_code == 2) ? 2 : std::max(exit_code, code);
    json s;
    s["suite"] = std::string(verify::suite_name(suite));
    s["file"] = path.string();
    s["pass"] = report.count(verify::Verdict::Pass);
    s["fail"] = report.count(verify::Verdict::Fail);
    s["singular"] = report.count(verify::Verdict::Singular);
    s["exit_code"] = code;
    if (o.format == "text") {
      out << paint(color, code == 0, code == 0 ? "PASS" : "FAIL") << "  " << verify::suite_name(suite) << "  "
          << s["pass"].get<int>() << " pass, " << s["fail"].get<int>() << " fail, " << s["singular"].get<int>()
          << " singular  -> " << path.string() << '\n';
    }
    summary.push_back(std::move(s));
  }
  if (o.format != "text") {
    json j;
    j["reports"] = std::move(summary);
    j["exit_code"] = exit_code;
    out << j.dump(2) << '\n';
  }
  return exit_code;
}

void error_object(std::ostream& err, const char* kind, const std::string& message,
                  std::optional<std::complex<double>> z = std::nullopt) {
  json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (z) j["error"]["z"] = io::complex_to_json(*z);
  err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pqharm: (p,q) operator on harmonic multivalent series and class-membership checks"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* bracket = app.add_subcommand("bracket", "(p,q)-bracket [x]_{p,q}");
  bracket->add_option("--p", o.p, "p in (q, 1], default 1");
  bracket->add_option("--q", o.q, "q in (0, p)")->required();
  bracket->add_option("--x", o.x, "argument x >= 0")->required();
  add_format(bracket);

  auto* apply = app.add_subcommand("apply", "apply the operator to a series");
  apply->add_option("--params", o.params, "operator parameters JSON")->required();
  apply->add_option("--in", o.in, "series JSON")->required();
  apply->add_option("--out", o.out, "output path");
  add_format(apply);

  auto* check = app.add_subcommand("check", "coefficient and grid membership report");
  check->add_option("--class", o.class_path, "class parameters JSON")->required();
  check->add_option("--in", o.in, "series JSON")->required();
  check->add_option("--grid", o.grid, "RxA grid, default 64x256");
  check->add_option("--rmax", o.rmax, "largest radius, default 0.995");
  check->add_option("--out", o.out, "output path");
  add_format(check);

  auto* extremal = app.add_subcommand("extremal", "extreme-point function");
  extremal->add_option("--class", o.class_path, "class parameters JSON")->required();
  extremal->add_option("--kappa", o.kappa, "index of the extreme point")->required();
  extremal->add_option("--part", o.part, "analytic | co-analytic")->check(CLI::IsMember({"analytic", "co-analytic"}));
  extremal->add_option("--mu", o.mu, "weight on the extreme point, rest on z^ell (default 1)");
  extremal->add_option("--truncation", o.truncation, "truncation order, default max(kappa, ell)");
  extremal->add_option("--out", o.out, "output path");
  add_format(extremal);

  auto* conv = app.add_subcommand("convolve", "Hadamard product of two series");
  conv->add_option("--in", o.in, "two series JSON files (repeat --in)")->required();
  conv->add_option("--out", o.out, "output path");
  add_format(conv);

  auto* bern = app.add_subcommand("bernardi", "integral transform F_u");
  bern->add_option("--in", o.in, "series JSON")->required();
  bern->add_option("--u", o.u, "u > -1")->required();
  bern->add_option("--out", o.out, "output path");
  add_format(bern);

  auto* ver = app.add_subcommand("verify", "seeded verification suites");
  ver->add_option("--class", o.class_path, "class parameters JSON");
  ver->add_option("--in", o.in, "suite configuration JSON (alternative to --class)");
  ver->add_option("--trials", o.trials, "trials per suite, default 200");
  ver->add_option("--truncation", o.truncation, "truncation of sampled series, default 12");
  ver->add_option("--grid", o.grid, "RxA grid, default 64x256");
  ver->add_option("--rmax", o.rmax, "largest radius, default 0.995");
  ver->add_option("--seed", o.seed, "master seed, default 42");
  ver->add_option("--suites", o.suites, "comma list of sufficiency,convolution,convex,bernardi,sense");
  ver->add_option("--out", o.out, "report directory, default .");
  add_format(ver);

  std::vector<std::string> argv_store{"pqharm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_object(err, "usage_error", e.what());
    return 2;
  }

  try {
    if (*bracket) return cmd_bracket(o, out);
    if (*apply) return cmd_apply(o, out);
    if (*check) return cmd_check(o, out);
    if (*extremal) return cmd_extremal(o, out);
    if (*conv) return cmd_convolve(o, out);
    if (*bern) return cmd_bernardi(o, out);
    if (*ver) {
      if (o.in.empty() && o.class_path.empty()) throw UsageError("verify needs --class or --in");
      return cmd_verify(o, out);
    }
  } catch (const UsageError& e) {
    error_object(err, "usage_error", e.what());
  } catch (const FormatError& e) {
    error_object(err, "format_error", e.what());
  } catch (const SingularityError& e) {
    error_object(err, "singularity_error", e.what(), e.where());
  } catch (const DegenerateClassError& e) {
    error_object(err, "degenerate_class", e.what());
  } catch (const DomainError& e) {
    error_object(err, "domain_error", e.what());
  } catch (const MismatchError& e) {
    error_object(err, "mismatch_error", e.what());
  } catch (const NormalizationError& e) {
    error_object(err, "normalization_error", e.what());
  } catch (const QuadratureError& e) {
    error_object(err, "quadrature_error", e.what());
  }
  return 2;
}

}  // namespace pqharm::cli
