#include "pqharm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace pqharm::verify {

std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::Sufficiency: return "sufficiency";
    case Suite::Convolution: return "convolution";
    case Suite::Convex: return "convex";
    case Suite::Bernardi: return "bernardi";
    case Suite::Sense: return "sense";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : all_suites())
    if (suite_name(s) == name) return s;
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

std::vector<Suite> all_suites() {
  return {Suite::Sufficiency, Suite::Convolution, Suite::Convex, Suite::Bernardi, Suite::Sense};
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Singular: return "singular";
  }
  return "?";
}

void SuiteConfig::validate() const {
  if (trials < 1) throw DomainError("SuiteConfig: trials must be >= 1");
  if (truncation < cp.ell() + 1) throw DomainError("SuiteConfig: truncation must be >= ell + 1");
}

int SuiteReport::count(Verdict v) const {
  return int(std::count_if(trials.begin(), trials.end(), [v](const TrialReport& t) { return t.verdict == v; }));
}

int SuiteReport::exit_code() const {
  if (count(Verdict::Singular) > 0) return 2;
  if (count(Verdict::Fail) > 0) return 1;
  return 0;
}

ExtremalWeights<double> budget_weights(int ell, int truncation, double budget_fraction,
                                       const Eigen::VectorXd& analytic_shares,
                                       const Eigen::VectorXd& coanalytic_shares) {
  if (!(budget_fraction >= 0 && budget_fraction <= 1)) throw DomainError("budget fraction must lie in [0, 1]");
  if (analytic_shares.size() != truncation - ell || coanalytic_shares.size() != truncation - ell + 1)
    throw DomainError("budget_weights: share vectors do not match the truncation");
  auto w = ExtremalWeights<double>::identity(ell, truncation);
  const double total = analytic_shares.sum() + coanalytic_shares.sum();
  if (budget_fraction == 0 || total == 0) return w;
  w.x = analytic_shares * (budget_fraction / total);
  w.y = coanalytic_shares * (budget_fraction / total);
  w.x_ell = 1.0 - budget_fraction;
  return w;
}

HarmonicSeriesd sample_in_class(const ClassParamsd& cp, int truncation, Rng& rng) {
  if (cp.degenerate()) throw DegenerateClassError("sample_in_class: ell - 2 - sigma <= 0");
  const int ell = cp.ell();
  const double budget = rng.uniform_open_closed();
  Eigen::VectorXd xs(truncation - ell);
  Eigen::VectorXd ys(truncation - ell + 1);
  for (Eigen::Index i = 0; i < xs.size(); ++i) xs(i) = rng.uniform_open_closed();
  for (Eigen::Index i = 0; i < ys.size(); ++i) ys(i) = rng.uniform_open_closed();
  return extremal_function(budget_weights(ell, truncation, budget, xs, ys), cp);
}

HarmonicSeriesd sample_in_class(const ClassParamsd& cp, int truncation, std::uint64_t seed) {
  Rng rng(seed);
  return sample_in_class(cp, truncation, rng);
}

TrialReport sufficiency_trial(const HarmonicSeriesd& f, const ClassParamsd& cp, const DiskGrid& grid) {
  TrialReport r;
  r.margin = margin(f, cp);
  try {
    const auto re = min_re_over_grid(f, cp, grid);
    const auto sg = min_sense_gap_over_grid(f, grid);
    r.min_re = re.value;
    r.sense_gap_min = sg.value;
    if (!(re.value >= cp.sigma() - kSufficiencySlack)) {
      r.verdict = Verdict::Fail;
      r.witness_z = re.argmin;
    } else if (!(sg.value > 0)) {
      r.verdict = Verdict::Fail;
      r.witness_z = sg.argmin;
    }
  } catch (const SingularityError& e) {
    r.verdict = Verdict::Singular;
    r.witness_z = e.where();
  }
  return r;
}

double margin_by_recurrence(const HarmonicSeriesd& f, const ClassParamsd& cp) {
  const double p = cp.op().pq().p();
  const double q = cp.op().pq().q();
  const double delta = cp.op().delta();
  const int t = cp.op().t();
  const int ell = f.ell();
  const double sigma = cp.sigma();
  auto bracket = [&](double x) { return (std::pow(p, x) - std::pow(q, x)) / (p - q); };
  auto qbracket = [&](double x) { return (1.0 - std::pow(q, x)) / (1.0 - q); };

  double phi = std::pow(qbracket(2.0 * ell - 1.0), t);
  double sum = 0;
  for (int k = ell; k <= f.truncation(); ++k) {
    if (k > ell) {
      phi *= std::pow(qbracket(double(k + ell - 1)) / qbracket(double(k + ell - 2)), t) *
             bracket(delta + double(k - 1)) / bracket(double(k - ell));
      sum += double(k) * (double(k) - sigma) * phi * std::abs(f.a(k));
    }
    sum += double(k) * (double(k) - 2.0 - sigma) * phi * std::abs(f.b(k));
  }
  return double(ell) * (double(ell) - 2.0 - sigma) - sum;
}

quad::Result bernardi_quadrature_oracle(const HarmonicSeriesd& f, double u, double x, double rel_tol) {
  if (!(x > 0 && x < 1)) throw DomainError("bernardi_quadrature_oracle: x must lie in (0, 1)");
  if (!(u > -1)) throw DomainError("bernardi_quadrature_oracle: u must exceed -1");
  const int ell = f.ell();
  const double c = 1.0 / (u + ell);
  // Below s_min the integrand has reached its limit to far better than double precision.
  const double s_min = std::pow(1e-280, 1.0 / ell);
  auto integrand = [&](double w) {
    const double s = std::max(std::pow(w, c), s_min);
    return evaluate(f, std::complex<double>(x * s, 0.0)) / std::pow(s, ell);
  };
  return quad::integrate(integrand, 0.0, 1.0, rel_tol);
}

namespace {

TrialReport sense_trial(const SuiteConfig& config, std::uint64_t seed) {
  const auto f = sample_in_class(config.cp, config.truncation, seed);
  TrialReport r;
  r.margin = margin(f, config.cp);
  const auto sg = min_sense_gap_over_grid(f, config.grid);
  r.sense_gap_min = sg.value;
  if (!(sg.value > 0)) {
    r.verdict = Verdict::Fail;
    r.witness_z = sg.argmin;
  }
  return r;
}

TrialReport convex_trial(const SuiteConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  const auto f1 = sample_in_class(config.cp, config.truncation, rng);
  const auto f2 = sample_in_class(config.cp, config.truncation, rng);
  const double mu = rng.uniform();
  const auto g = linear_combine<double>({{mu, f1}, {1.0 - mu, f2}});
  const double m1 = margin(f1, config.cp);
  const double m2 = margin(f2, config.cp);
  const double mg = margin(g, config.cp);
  const double affinity_error = std::abs(mg - (mu * m1 + (1.0 - mu) * m2));

  TrialReport r;
  r.margin = mg;
  r.checks = {{"mu", mu}, {"margin_f1", m1}, {"margin_f2", m2}, {"affinity_error", affinity_error}};
  if (!(affinity_error <= kAffinityTol) || !(mg >= -kMarginTol)) {
    r.verdict = Verdict::Fail;
    r.witness_z = std::complex<double>(0.0);
  }
  return r;
}

TrialReport convolution_trial(const SuiteConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  const auto f = sample_in_class(config.cp, config.truncation, rng);
  const auto m = sample_in_class(config.cp, config.truncation, rng);
  const auto fm = convolve(f, m);
  const double primary = margin(fm, config.cp);
  const double oracle = margin_by_recurrence(fm, config.cp);
  const double disagreement = std::abs(primary - oracle);

  TrialReport r;
  r.margin = primary;
  r.checks = {{"margin_f", margin(f, config.cp)},
              {"margin_m", margin(m, config.cp)},
              {"oracle_margin", oracle},
              {"oracle_disagreement", disagreement}};
  r.classification = primary >= -kMarginTol ? "closed" : "not_closed";
  if (!(disagreement <= kOracleAgreementTol)) {
    r.verdict = Verdict::Fail;
    r.witness_z = std::complex<double>(0.0);
  }
  return r;
}

TrialReport bernardi_trial(const SuiteConfig& config, std::uint64_t seed) {
  const auto f = sample_in_class(config.cp, config.truncation, seed);
  TrialReport r;
  r.margin = margin(f, config.cp);
  double worst_margin_drop = -INFINITY;
  double worst_quad_error = 0;
  for (double u : kBernardiU) {
    const auto fu = bernardi(f, u);
    const double mu = margin(fu, config.cp);
    worst_margin_drop = std::max(worst_margin_drop, r.margin - mu);
    if (!(mu >= r.margin - kMarginTol) && r.verdict == Verdict::Pass) {
      r.verdict = Verdict::Fail;
      r.witness_z = std::complex<double>(0.0);
    }
    for (double x : kBernardiX) {
      const auto expected = evaluate(fu, std::complex<double>(x, 0.0));
      double rel = INFINITY;
      try {
        rel = std::abs(bernardi_quadrature_oracle(f, u, x).value - expected) / std::abs(expected);
      } catch (const QuadratureError&) {
      }
      worst_quad_error = std::max(worst_quad_error, rel);
      if (!(rel <= kQuadratureTol) && r.verdict == Verdict::Pass) {
        r.verdict = Verdict::Fail;
        r.witness_z = std::complex<double>(x, 0.0);
      }
    }
  }
  r.checks = {{"max_margin_drop", worst_margin_drop}, {"max_quadrature_rel_error", worst_quad_error}};
  return r;
}

}  // namespace

TrialReport run_trial(const SuiteConfig& config, Suite suite, int trial_index, std::uint64_t seed) {
  TrialReport r;
  switch (suite) {
    case Suite::Sufficiency:
      r = sufficiency_trial(sample_in_class(config.cp, config.truncation, seed), config.cp, config.grid);
      break;
    case Suite::Sense: r = sense_trial(config, seed); break;
    case Suite::Convex: r = convex_trial(config, seed); break;
    case Suite::Convolution: r = convolution_trial(config, seed); break;
    case Suite::Bernardi: r = bernardi_trial(config, seed); break;
  }
  r.trial_index = trial_index;
  r.seed_used = seed;
  return r;
}

SuiteReport run_suite(const SuiteConfig& config, Suite suite, unsigned threads) {
  config.validate();
  SuiteReport report{suite, config, std::vector<TrialReport>(std::size_t(config.trials))};
  threads = std::clamp(threads, 1u, unsigned(config.trials));

  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned worker) {
    try {
      for (int i = int(worker); i < config.trials; i += int(threads))
        report.trials[std::size_t(i)] = run_trial(config, suite, i, config.seed + std::uint64_t(i));
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return report;
}

std::vector<TrialReport> closure_suite(const SuiteConfig& config, unsigned threads) {
  std::vector<TrialReport> out;
  for (Suite s : {Suite::Convex, Suite::Convolution}) {
    if (std::find(config.suites.begin(), config.suites.end(), s) == config.suites.end()) continue;
    auto rep = run_suite(config, s, threads);
    out.insert(out.end(), rep.trials.begin(), rep.trials.end());
  }
  return out;
}

}  // namespace pqharm::verify
