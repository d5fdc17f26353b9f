#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "pqharm/operator.hpp"
#include "pqharm/verify.hpp"

using namespace pqharm;
using cd = std::complex<double>;

namespace {

std::vector<OperatorParamsd> sampled_params() {
  std::vector<OperatorParamsd> out{
      {PQParamsd(0.9, 0.5), 3, 1.0, 1},
      {PQParamsd(1.0, 0.5), 1, 0.0, 2},
      {PQParamsd(0.7, 0.3), 5, -4.5, 0},
      {PQParamsd(1.0, 0.99), 2, 3.25, 3},
  };
  verify::Rng rng(21);
  for (int i = 0; i < 16; ++i) {
    const double p = 0.3 + 0.7 * rng.uniform_open_closed();
    const double q = p * (0.05 + 0.9 * rng.uniform());
    const int ell = 1 + int(rng.uniform() * 6);
    const double delta = -ell + 0.01 + 6 * rng.uniform();
    out.emplace_back(PQParamsd(p, q), ell, delta, int(rng.uniform() * 4));
  }
  return out;
}

// Ratio Phi_{k+1}/Phi_k built from raw exponentials.
double recurrence_ratio(int k, const OperatorParamsd& op) {
  const double p = op.pq().p(), q = op.pq().q();
  auto br = [&](double x) { return (std::pow(p, x) - std::pow(q, x)) / (p - q); };
  auto bq = [&](double x) { return (1 - std::pow(q, x)) / (1 - q); };
  const int ell = op.ell();
  return std::pow(bq(k + ell) / bq(k + ell - 1), op.t()) * br(op.delta() + k) / br(k + 1 - ell);
}

}  // namespace

TEST(OperatorParams, Validation) {
  const PQParamsd pq(0.9, 0.5);
  EXPECT_THROW(OperatorParamsd(pq, 0, 1.0, 1), DomainError);
  EXPECT_THROW(OperatorParamsd(pq, 3, -3.0, 1), DomainError);
  EXPECT_THROW(OperatorParamsd(pq, 3, 1.0, -1), DomainError);
  EXPECT_NO_THROW(OperatorParamsd(pq, 3, -2.999, 0));
}

TEST(Multiplier, Examples) {
  const PQParamsd pq(0.9, 0.5);
  for (double delta : {-2.5, 0.0, 1.0, 7.0}) EXPECT_EQ(multiplier(3, OperatorParamsd(pq, 3, delta, 0)), 1.0);
  for (int ell : {1, 3, 5}) {
    const auto id = OperatorParamsd::identity(pq, ell);
    for (int n = 0; n <= 10; ++n) EXPECT_NEAR(multiplier(ell + n, id), 1.0, 1e-14);
  }
  // [5]_q at q = 0.5 by the geometric sum.
  double geometric = 0;
  for (int k = 0; k < 5; ++k) geometric += std::pow(0.5, k);
  EXPECT_DOUBLE_EQ(multiplier(3, OperatorParamsd(pq, 3, 1.0, 1)), geometric);
  EXPECT_DOUBLE_EQ(multiplier(3, OperatorParamsd(PQParamsd(0.7, 0.5), 3, 2.2, 1)), geometric);
  EXPECT_THROW(multiplier(2, OperatorParamsd(pq, 3, 1.0, 1)), DomainError);
}

TEST(Multiplier, PositiveOnWideRange) {
  for (const auto& op : sampled_params())
    for (int k = op.ell(); k <= op.ell() + 50; ++k) EXPECT_GT(multiplier(k, op), 0.0) << "k=" << k;
}

TEST(Multiplier, SatisfiesRatioRecurrence) {
  for (const auto& op : sampled_params()) {
    for (int k = op.ell(); k < op.ell() + 30; ++k) {
      const double ratio = multiplier(k + 1, op) / multiplier(k, op);
      const double expected = recurrence_ratio(k, op);
      EXPECT_LE(std::abs(ratio - expected), 1e-12 * std::abs(expected)) << "k=" << k;
    }
  }
}

TEST(Multiplier, TableMatchesPointwise) {
  const OperatorParamsd op(PQParamsd(0.9, 0.5), 3, 1.0, 1);
  const auto table = multiplier_table(op, 12);
  ASSERT_EQ(table.size(), 10);
  for (int k = 3; k <= 12; ++k) EXPECT_EQ(table(k - 3), multiplier(k, op));
}

TEST(ApplyOperator, MonomialIsFixed) {
  for (const auto& op : sampled_params()) {
    const HarmonicSeriesd f(op.ell(), op.ell() + 6);
    EXPECT_EQ(apply_operator(f, op), f);
  }
}

TEST(ApplyOperator, IdentityConfiguration) {
  verify::Rng rng(4);
  for (int ell : {1, 3, 5}) {
    HarmonicSeriesd f(ell, ell + 10);
    for (int k = ell; k <= ell + 10; ++k) {
      if (k > ell) f.set_a(k, cd(2 * rng.uniform() - 1, 2 * rng.uniform() - 1));
      f.set_b(k, cd(2 * rng.uniform() - 1, 2 * rng.uniform() - 1));
    }
    const auto hf = apply_operator(f, OperatorParamsd::identity(PQParamsd(0.9, 0.5), ell));
    double dev = 0;
    for (int k = ell; k <= ell + 10; ++k) dev = std::max({dev, std::abs(hf.a(k) - f.a(k)), std::abs(hf.b(k) - f.b(k))});
    EXPECT_LT(dev, 1e-14);
  }
}

TEST(ApplyOperator, ScalesEveryWeightedTermIncludingLeadingCoanalytic) {
  const OperatorParamsd op(PQParamsd(0.9, 0.5), 3, 1.0, 1);
  HarmonicSeriesd f(3, 6);
  f.set_a(5, cd(0.1, -0.2));
  f.set_b(3, cd(0.3, 0.0));
  f.set_b(6, cd(0.0, 0.05));
  const auto hf = apply_operator(f, op);
  EXPECT_EQ(hf.a(5), f.a(5) * multiplier(5, op));
  EXPECT_EQ(hf.b(3), f.b(3) * multiplier(3, op));
  EXPECT_EQ(hf.b(6), f.b(6) * multiplier(6, op));
  EXPECT_EQ(hf.a(4), cd(0));
  EXPECT_NE(multiplier(3, op), 1.0);
}

TEST(ApplyOperator, TermwiseLinear) {
  const OperatorParamsd op(PQParamsd(0.8, 0.35), 3, 0.5, 2);
  verify::Rng rng(8);
  HarmonicSeriesd f1(3, 9), f2(3, 9);
  for (int k = 3; k <= 9; ++k) {
    if (k > 3) {
      f1.set_a(k, cd(rng.uniform(), rng.uniform()));
      f2.set_a(k, cd(rng.uniform(), rng.uniform()));
    }
    f1.set_b(k, cd(rng.uniform(), rng.uniform()));
    f2.set_b(k, cd(rng.uniform(), rng.uniform()));
  }
  // f1 + f2 - z^ell, formed on the coefficient tables.
  const HarmonicSeriesd sum(3, f1.a_coeffs() + f2.a_coeffs(), f1.b_coeffs() + f2.b_coeffs());
  const auto lhs = apply_operator(sum, op);
  const auto h1 = apply_operator(f1, op);
  const auto h2 = apply_operator(f2, op);
  const auto phi = multiplier_table(op, 9);
  for (int k = 3; k <= 9; ++k) {
    // Each side is phi_k * (x + y) versus phi_k * x + phi_k * y; agree to rounding of one addition.
    EXPECT_LE(std::abs(lhs.a(k) - (h1.a(k) + h2.a(k))), 4e-16 * phi(k - 3) * 4);
    EXPECT_LE(std::abs(lhs.b(k) - (h1.b(k) + h2.b(k))), 4e-16 * phi(k - 3) * 4);
  }
}

TEST(ApplyOperator, ValenceMismatch) {
  EXPECT_THROW(apply_operator(HarmonicSeriesd(2, 5), OperatorParamsd(PQParamsd(0.9, 0.5), 3, 1.0, 1)), MismatchError);
}

TEST(Multiplier, LongDoubleInstantiation) {
  const OperatorParams<long double> opl(PQParams<long double>(0.9L, 0.5L), 3, 1.0L, 1);
  const OperatorParamsd opd(PQParamsd(0.9, 0.5), 3, 1.0, 1);
  for (int k = 3; k <= 12; ++k)
    EXPECT_NEAR(double(multiplier(k, opl)), multiplier(k, opd), 1e-14 * multiplier(k, opd));
}
