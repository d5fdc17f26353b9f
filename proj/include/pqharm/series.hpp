#ifndef PQHARM_SERIES_HPP
#define PQHARM_SERIES_HPP

// Truncated harmonic multivalent functions f = h + conj(g) with
//   h(z) = z^ell + sum_{k=ell+1}^{N} a_k z^k,   g(z) = sum_{k=ell}^{N} b_k z^k.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>

#include "pqharm/errors.hpp"

namespace pqharm {

enum class Part { Analytic, CoAnalytic };

template <typename Scalar_>
class HarmonicSeries {
 public:
  using Scalar = Scalar_;
  using Complex = std::complex<Scalar>;
  using CoeffVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  /// The bare monomial z^ell truncated at order `truncation`.
  HarmonicSeries(int ell, int truncation) : ell_(ell) {
    if (ell < 1) throw DomainError("HarmonicSeries: ell must be >= 1");
    if (truncation < ell) throw DomainError("HarmonicSeries: truncation must be >= ell");
    a_ = CoeffVector::Zero(truncation - ell);
    b_ = CoeffVector::Zero(truncation - ell + 1);
  }

  /// a holds a_{ell+1..N}, b holds b_{ell..N}; so b.size() == a.size() + 1.
  HarmonicSeries(int ell, CoeffVector a, CoeffVector b) : ell_(ell), a_(std::move(a)), b_(std::move(b)) {
    if (ell < 1) throw DomainError("HarmonicSeries: ell must be >= 1");
    if (b_.size() != a_.size() + 1)
      throw DomainError("HarmonicSeries: need b.size() == a.size() + 1");
  }

  int ell() const { return ell_; }
  int truncation() const { return ell_ + static_cast<int>(a_.size()); }

  const CoeffVector& a_coeffs() const { return a_; }
  const CoeffVector& b_coeffs() const { return b_; }

  /// Coefficient of z^kappa in h, excluding the fixed leading 1; zero outside the stored range.
  Complex a(int kappa) const {
    return (kappa > ell_ && kappa <= truncation()) ? a_(kappa - ell_ - 1) : Complex(0);
  }
  Complex b(int kappa) const {
    return (kappa >= ell_ && kappa <= truncation()) ? b_(kappa - ell_) : Complex(0);
  }

  void set_a(int kappa, Complex v) {
    if (kappa <= ell_ || kappa > truncation())
      throw DomainError("set_a: index " + std::to_string(kappa) + " outside [ell+1, N]");
    a_(kappa - ell_ - 1) = v;
  }
  void set_b(int kappa, Complex v) {
    if (kappa < ell_ || kappa > truncation())
      throw DomainError("set_b: index " + std::to_string(kappa) + " outside [ell, N]");
    b_(kappa - ell_) = v;
  }

  /// |b_ell| < 1 is expected of a member of the family but never enforced.
  bool leading_coanalytic_ok() const { return std::abs(b_(0)) < Scalar(1); }

  bool operator==(const HarmonicSeries& o) const {
    return ell_ == o.ell_ && a_.size() == o.a_.size() && a_ == o.a_ && b_ == o.b_;
  }

 private:
  int ell_;
  CoeffVector a_;
  CoeffVector b_;
};

using HarmonicSeriesd = HarmonicSeries<double>;

template <typename Scalar>
struct WeightedSeries {
  Scalar weight;
  HarmonicSeries<Scalar> series;
};

namespace detail {

template <typename Scalar>
void require_in_disk(const std::complex<Scalar>& z, const char* who) {
  if (!(std::abs(z) < Scalar(1))) throw DomainError(std::string(who) + ": |z| must be < 1");
}

template <typename T>
T ipow(T base, int n) {
  T r(1);
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// sum_i c_i * (d/dz)^order z^{first+i}. Terms with first+i < order vanish and are skipped.
template <typename Scalar>
std::complex<Scalar> poly_derivative(const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>& c,
                                     int first, int order, const std::complex<Scalar>& z) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index skip = std::max(0, order - first);
  Complex acc(0);
  for (Eigen::Index i = c.size() - 1; i >= skip; --i) {
    const int k = first + static_cast<int>(i);
    Scalar falling(1);
    for (int j = 0; j < order; ++j) falling *= Scalar(k - j);
    acc = acc * z + c(i) * falling;
  }
  const int lowest = first + static_cast<int>(skip) - order;
  if (lowest > 0) acc *= ipow(z, lowest);
  return acc;
}

}  // namespace detail

/// h(z) or g(z) (order 0) and their first two derivatives, without conjugation.
template <typename Scalar>
std::complex<Scalar> eval_part_derivative(const HarmonicSeries<Scalar>& f, Part part, int order,
                                          const std::complex<Scalar>& z) {
  using Complex = std::complex<Scalar>;
  detail::require_in_disk(z, "eval_part_derivative");
  if (order < 0 || order > 2) throw DomainError("eval_part_derivative: order must be 0, 1 or 2");
  const int ell = f.ell();
  if (part == Part::CoAnalytic) return detail::poly_derivative(f.b_coeffs(), ell, order, z);
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> full(f.a_coeffs().size() + 1);
  full(0) = Complex(1);
  full.tail(f.a_coeffs().size()) = f.a_coeffs();
  return detail::poly_derivative(full, ell, order, z);
}

/// f(z) = h(z) + conj(g(z)).
template <typename Scalar>
std::complex<Scalar> evaluate(const HarmonicSeries<Scalar>& f, const std::complex<Scalar>& z) {
  detail::require_in_disk(z, "evaluate");
  return eval_part_derivative(f, Part::Analytic, 0, z) +
         std::conj(eval_part_derivative(f, Part::CoAnalytic, 0, z));
}

/// |h'(z)| - |g'(z)|; positive means locally sense-preserving at z.
template <typename Scalar>
Scalar sense_gap(const HarmonicSeries<Scalar>& f, const std::complex<Scalar>& z) {
  detail::require_in_disk(z, "sense_gap");
  return std::abs(eval_part_derivative(f, Part::Analytic, 1, z)) -
         std::abs(eval_part_derivative(f, Part::CoAnalytic, 1, z));
}

/// Coefficient-wise affine combination; weights must sum to one so the z^ell term stays 1.
template <typename Scalar>
HarmonicSeries<Scalar> linear_combine(std::span<const WeightedSeries<Scalar>> terms) {
  if (terms.empty()) throw NormalizationError("linear_combine: no terms");
  const int ell = terms.front().series.ell();
  int n = ell;
  Scalar total(0);
  for (const auto& t : terms) {
    if (t.series.ell() != ell) throw MismatchError("linear_combine: valence mismatch");
    n = std::max(n, t.series.truncation());
    total += t.weight;
  }
  using std::abs;
  if (abs(total - Scalar(1)) > Scalar(1e-12))
    throw NormalizationError("linear_combine: weights sum to " + std::to_string(double(total)));

  HarmonicSeries<Scalar> out(ell, n);
  auto a = out.a_coeffs();
  auto b = out.b_coeffs();
  for (const auto& t : terms) {
    a.head(t.series.a_coeffs().size()) += t.weight * t.series.a_coeffs();
    b.head(t.series.b_coeffs().size()) += t.weight * t.series.b_coeffs();
  }
  return HarmonicSeries<Scalar>(ell, std::move(a), std::move(b));
}

template <typename Scalar>
HarmonicSeries<Scalar> linear_combine(std::initializer_list<WeightedSeries<Scalar>> terms) {
  return linear_combine(std::span<const WeightedSeries<Scalar>>(terms.begin(), terms.size()));
}

}  // namespace pqharm

#endif  // PQHARM_SERIES_HPP
