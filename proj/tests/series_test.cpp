#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "pqharm/grid.hpp"
#include "pqharm/series.hpp"
#include "pqharm/verify.hpp"

using namespace pqharm;
using cd = std::complex<double>;

namespace {

cd random_point(verify::Rng& rng, double rmax = 0.95) {
  return std::polar(rmax * rng.uniform(), 2 * M_PI * rng.uniform());
}

HarmonicSeriesd random_series(verify::Rng& rng, int ell, int n, bool real_nonneg = false) {
  HarmonicSeriesd f(ell, n);
  for (int k = ell; k <= n; ++k) {
    const double scale = 0.3 / (k * k);
    auto draw = [&] {
      return real_nonneg ? cd(scale * rng.uniform(), 0.0)
                         : cd(scale * (2 * rng.uniform() - 1), scale * (2 * rng.uniform() - 1));
    };
    if (k > ell) f.set_a(k, draw());
    f.set_b(k, draw());
  }
  return f;
}

// Term-by-term monomial evaluation with std::pow, independent of the Horner path.
cd direct_part(const HarmonicSeriesd& f, Part part, cd z) {
  cd sum = 0;
  if (part == Part::Analytic) {
    sum += std::pow(z, f.ell());
    for (int k = f.ell() + 1; k <= f.truncation(); ++k) sum += f.a(k) * std::pow(z, k);
  } else {
    for (int k = f.ell(); k <= f.truncation(); ++k) sum += f.b(k) * std::pow(z, k);
  }
  return sum;
}

}  // namespace

TEST(HarmonicSeries, StorageRanges) {
  HarmonicSeriesd f(3, 6);
  EXPECT_EQ(f.ell(), 3);
  EXPECT_EQ(f.truncation(), 6);
  EXPECT_EQ(f.a_coeffs().size(), 3);
  EXPECT_EQ(f.b_coeffs().size(), 4);
  EXPECT_THROW(f.set_a(3, 1.0), DomainError);
  EXPECT_THROW(f.set_a(7, 1.0), DomainError);
  EXPECT_THROW(f.set_b(2, 1.0), DomainError);
  f.set_b(3, cd(0.5, 0.1));
  EXPECT_EQ(f.b(3), cd(0.5, 0.1));
  EXPECT_EQ(f.a(2), cd(0));
  EXPECT_EQ(f.a(100), cd(0));
  EXPECT_THROW(HarmonicSeriesd(0, 3), DomainError);
  EXPECT_THROW(HarmonicSeriesd(3, 2), DomainError);
}

TEST(HarmonicSeries, LeadingCoanalyticAdvisory) {
  HarmonicSeriesd f(3, 3);
  EXPECT_TRUE(f.leading_coanalytic_ok());
  f.set_b(3, 1.0);
  EXPECT_FALSE(f.leading_coanalytic_ok());
}

TEST(Evaluate, Examples) {
  HarmonicSeriesd f(3, 3);
  EXPECT_DOUBLE_EQ(evaluate(f, cd(0.5)).real(), 0.125);

  HarmonicSeriesd g(3, 3);
  g.set_b(3, 0.5);
  EXPECT_DOUBLE_EQ(evaluate(g, cd(0.5)).real(), 0.1875);
  EXPECT_EQ(evaluate(g, cd(0.5)).imag(), 0.0);

  HarmonicSeriesd h(3, 4);
  h.set_a(4, 0.1);
  const cd v = evaluate(h, cd(0, 0.5));
  EXPECT_NEAR(v.real(), 0.00625, 1e-17);
  EXPECT_NEAR(v.imag(), -0.125, 1e-17);
}

TEST(Evaluate, OutsideDiskIsDomainError) {
  HarmonicSeriesd f(3, 5);
  EXPECT_THROW(evaluate(f, cd(1.0)), DomainError);
  EXPECT_THROW(evaluate(f, cd(0.8, 0.7)), DomainError);
  EXPECT_THROW(eval_part_derivative(f, Part::Analytic, 1, cd(1.0)), DomainError);
  EXPECT_THROW(sense_gap(f, cd(0, -1.2)), DomainError);
}

TEST(Evaluate, MatchesDirectMonomials) {
  verify::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int ell = 1 + trial % 5;
    const auto f = random_series(rng, ell, ell + 8);
    const cd z = random_point(rng);
    const cd expected = direct_part(f, Part::Analytic, z) + std::conj(direct_part(f, Part::CoAnalytic, z));
    EXPECT_LE(std::abs(evaluate(f, z) - expected), 1e-14);
  }
}

TEST(EvalPartDerivative, Examples) {
  HarmonicSeriesd f(3, 3);
  EXPECT_DOUBLE_EQ(eval_part_derivative(f, Part::Analytic, 1, cd(0.5)).real(), 0.75);
  EXPECT_DOUBLE_EQ(eval_part_derivative(f, Part::Analytic, 2, cd(0.5)).real(), 3.0);
  HarmonicSeriesd g(3, 3);
  g.set_b(3, 0.2);
  EXPECT_NEAR(eval_part_derivative(g, Part::CoAnalytic, 1, cd(0.5)).real(), 0.15, 1e-16);
  EXPECT_THROW(eval_part_derivative(g, Part::CoAnalytic, 3, cd(0.5)), DomainError);
}

TEST(EvalPartDerivative, LowValenceSecondDerivative) {
  // ell = 1: h = z + a_2 z^2, h'' = 2 a_2; g = b_1 z, g'' = 0.
  HarmonicSeriesd f(1, 2);
  f.set_a(2, 0.25);
  f.set_b(1, 0.5);
  const cd z(0.3, -0.2);
  EXPECT_NEAR(std::abs(eval_part_derivative(f, Part::Analytic, 2, z) - cd(0.5)), 0.0, 1e-16);
  EXPECT_EQ(eval_part_derivative(HarmonicSeriesd(1, 1), Part::CoAnalytic, 2, z), cd(0));
  EXPECT_EQ(eval_part_derivative(f, Part::Analytic, 1, cd(0)), cd(1));
}

TEST(EvalPartDerivative, CentralDifferenceAgreement) {
  verify::Rng rng(11);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const int ell = 1 + trial % 4;
    const auto f = random_series(rng, ell, ell + 7);
    const cd z = random_point(rng, 0.9);
    const Part part = trial % 2 ? Part::Analytic : Part::CoAnalytic;
    const cd fd = (direct_part(f, part, z + h) - direct_part(f, part, z - h)) / (2 * h);
    const cd d1 = eval_part_derivative(f, part, 1, z);
    EXPECT_LE(std::abs(d1 - fd), 1e-6 * (1 + std::abs(d1)));
    const cd fd2 = (eval_part_derivative(f, part, 1, z + h) - eval_part_derivative(f, part, 1, z - h)) / (2 * h);
    const cd d2 = eval_part_derivative(f, part, 2, z);
    EXPECT_LE(std::abs(d2 - fd2), 1e-6 * (1 + std::abs(d2)));
  }
}

TEST(SenseGap, Examples) {
  HarmonicSeriesd f(3, 3);
  EXPECT_DOUBLE_EQ(sense_gap(f, cd(0.5)), 0.75);
  f.set_b(3, 0.5);
  EXPECT_DOUBLE_EQ(sense_gap(f, cd(0.5)), 0.375);
  f.set_b(3, 1.0);
  for (cd z : {cd(0.5), cd(0.1, 0.7), cd(-0.3, -0.3)}) EXPECT_EQ(sense_gap(f, z), 0.0);
}

TEST(LinearCombine, Examples) {
  HarmonicSeriesd f1(3, 4);
  f1.set_a(4, 0.4);
  HarmonicSeriesd f2(3, 4);
  const auto g = linear_combine<double>({{0.25, f1}, {0.75, f2}});
  EXPECT_NEAR(g.a(4).real(), 0.1, 1e-17);

  EXPECT_EQ(linear_combine<double>({{1.0, f1}, {0.0, f2}}), f1);
  EXPECT_EQ(linear_combine<double>({{0.5, f1}, {0.5, f1}}), f1);
}

TEST(LinearCombine, Errors) {
  HarmonicSeriesd f(3, 4), g(2, 4);
  EXPECT_THROW(linear_combine<double>({{0.5, f}, {0.5, g}}), MismatchError);
  EXPECT_THROW(linear_combine<double>({{0.5, f}, {0.6, f}}), NormalizationError);
  EXPECT_THROW(linear_combine<double>(std::span<const WeightedSeries<double>>{}), NormalizationError);
}

TEST(LinearCombine, TruncationIsMaxOfInputs) {
  HarmonicSeriesd f(2, 3), g(2, 7);
  g.set_b(7, 0.2);
  const auto h = linear_combine<double>({{0.5, f}, {0.5, g}});
  EXPECT_EQ(h.truncation(), 7);
  EXPECT_DOUBLE_EQ(h.b(7).real(), 0.1);
}

TEST(LinearCombine, EvaluationIsLinear) {
  verify::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int ell = 1 + trial % 4;
    const auto f1 = random_series(rng, ell, ell + 3 + trial % 5);
    const auto f2 = random_series(rng, ell, ell + 6);
    const auto f3 = random_series(rng, ell, ell + 2);
    const double w1 = rng.uniform(), w2 = rng.uniform() * (1 - w1), w3 = 1 - w1 - w2;
    const auto g = linear_combine<double>({{w1, f1}, {w2, f2}, {w3, f3}});
    const cd z = random_point(rng);
    const cd expected = w1 * evaluate(f1, z) + w2 * evaluate(f2, z) + w3 * evaluate(f3, z);
    EXPECT_LE(std::abs(evaluate(g, z) - expected), 1e-12);
  }
}

TEST(Evaluate, RealOnRealAxisForRealCoefficients) {
  verify::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_series(rng, 1 + trial % 4, 10, true);
    const double x = 1.9 * rng.uniform() - 0.95;
    EXPECT_LE(std::abs(evaluate(f, cd(x)).imag()), 1e-15);
  }
}

TEST(DiskGrid, UniformScheduleAndValidation) {
  const auto g = DiskGrid::uniform(4, 8, 0.8);
  ASSERT_EQ(g.r_values().size(), 4u);
  EXPECT_DOUBLE_EQ(g.r_values().front(), 0.2);
  EXPECT_DOUBLE_EQ(g.r_values().back(), 0.8);
  EXPECT_EQ(g.size(), 32u);
  EXPECT_NEAR(std::abs(g.point(1, 2) - cd(0, 0.4)), 0.0, 1e-16);

  const auto d = DiskGrid::default_grid();
  EXPECT_EQ(d.r_values().size(), 64u);
  EXPECT_EQ(d.angles_per_radius(), 256);
  EXPECT_DOUBLE_EQ(d.r_max(), 0.995);

  EXPECT_THROW(DiskGrid({0.2, 0.1}, 4, 0.5), DomainError);
  EXPECT_THROW(DiskGrid({0.2, 0.6}, 4, 0.5), DomainError);
  EXPECT_THROW(DiskGrid({0.0}, 4, 0.5), DomainError);
  EXPECT_THROW(DiskGrid({0.2}, 0, 0.5), DomainError);
  EXPECT_THROW(DiskGrid({0.2}, 4, 1.0), DomainError);
}
