#ifndef PQHARM_VERIFY_HPP
#define PQHARM_VERIFY_HPP

// Seeded Monte Carlo checks of the class properties on random members built from the
// coefficient condition, plus a quadrature oracle for the integral transform.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqharm/classcheck.hpp"
#include "pqharm/grid.hpp"
#include "pqharm/quadrature.hpp"
#include "pqharm/series.hpp"

namespace pqharm::verify {

/// mt19937_64 with a platform-independent mapping to doubles. Trial i of a run seeded with s
/// uses its own generator seeded with s + i.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

 private:
  std::mt19937_64 engine_;
};

enum class Suite { Sufficiency, Convolution, Convex, Bernardi, Sense };

std::string_view suite_name(Suite s);
Suite parse_suite(std::string_view name);
std::vector<Suite> all_suites();

enum class Verdict { Pass, Fail, Singular };
std::string_view verdict_name(Verdict v);

// Fixed tolerances of the harness.
inline constexpr double kSufficiencySlack = 1e-9;
inline constexpr double kAffinityTol = 1e-12;
inline constexpr double kMarginTol = 1e-12;
inline constexpr double kOracleAgreementTol = 1e-12;
inline constexpr double kQuadratureTarget = 1e-10;
inline constexpr double kQuadratureTol = 1e-8;
inline constexpr double kBernardiU[] = {0.0, 1.0, 2.0};
inline constexpr double kBernardiX[] = {0.25, 0.5, 0.75};

struct SuiteConfig {
  ClassParamsd cp;
  int trials;
  int truncation;
  DiskGrid grid;
  std::uint64_t seed;
  std::vector<Suite> suites;

  void validate() const;
};

struct TrialReport {
  int trial_index = 0;
  std::uint64_t seed_used = 0;
  double margin = 0;
  std::optional<double> min_re;
  std::optional<double> sense_gap_min;
  Verdict verdict = Verdict::Pass;
  std::optional<std::complex<double>> witness_z;
  /// Suite-specific named quantities, in a fixed order.
  std::vector<std::pair<std::string, double>> checks;
  /// Convolution suite only: "closed" or "not_closed".
  std::optional<std::string> classification;
};

struct SuiteReport {
  Suite suite;
  SuiteConfig config;
  std::vector<TrialReport> trials;

  int count(Verdict v) const;
  /// 0 all pass, 1 any fail, 2 any singular (singular wins over fail).
  int exit_code() const;
};

/// Nonnegative real member: budget fraction in (0, 1] split over every index by normalised
/// positive random weights; each share is divided by its weight k(k-sigma)Phi_k or k(k-2-sigma)Phi_k.
HarmonicSeriesd sample_in_class(const ClassParamsd& cp, int truncation, std::uint64_t seed);
HarmonicSeriesd sample_in_class(const ClassParamsd& cp, int truncation, Rng& rng);

/// The extremal weights a sample draws: x_ell = 1 - budget, remaining mass spread by `shares`.
ExtremalWeights<double> budget_weights(int ell, int truncation, double budget_fraction,
                                       const Eigen::VectorXd& analytic_shares,
                                       const Eigen::VectorXd& coanalytic_shares);

/// Pass iff min Re(A/B) >= sigma - 1e-9 and the sense gap stays positive on the grid.
TrialReport sufficiency_trial(const HarmonicSeriesd& f, const ClassParamsd& cp, const DiskGrid& grid);

/// One trial of a suite from an explicit seed; trial_index is copied into the report.
TrialReport run_trial(const SuiteConfig& config, Suite suite, int trial_index, std::uint64_t seed);

/// Trials seeded with config.seed + i, executed on `threads` workers and gathered in index order.
SuiteReport run_suite(const SuiteConfig& config, Suite suite, unsigned threads = 1);

/// The convex and convolution suites among config.suites, concatenated in that order.
std::vector<TrialReport> closure_suite(const SuiteConfig& config, unsigned threads = 1);

/// Margin recomputed with multipliers from the ratio recurrence Phi_{k+1}/Phi_k and locally
/// defined brackets, sharing no code with the operator module.
double margin_by_recurrence(const HarmonicSeriesd& f, const ClassParamsd& cp);

/// (u+ell) x^-u int_0^x t^(u-1) f(t) dt along the real segment, after the substitution
/// t = x w^(1/(u+ell)) which absorbs the power-law weight.
quad::Result bernardi_quadrature_oracle(const HarmonicSeriesd& f, double u, double x,
                                        double rel_tol = kQuadratureTarget);

}  // namespace pqharm::verify

#endif  // PQHARM_VERIFY_HPP
