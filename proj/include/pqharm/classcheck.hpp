#ifndef PQHARM_CLASSCHECK_HPP
#define PQHARM_CLASSCHECK_HPP

// Membership tests for the class defined by Re{A/B} >= sigma, where, with F = H f = Hh + conj(Hg),
//   A(z) = z^2 (Hh)''(z) - conj(z^2 (Hg)''(z)),   B(z) = z (Hh)'(z) + conj(z (Hg)'(z)).
// The sufficient coefficient condition is S(f) <= ell(ell-2-sigma) with
//   S(f) = sum_{k>ell} k(k-sigma) Phi_k |a_k| + sum_{k>=ell} k(k-2-sigma) Phi_k |b_k|.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "pqharm/errors.hpp"
#include "pqharm/grid.hpp"
#include "pqharm/operator.hpp"
#include "pqharm/series.hpp"

namespace pqharm {

template <typename Scalar>
class ClassParams {
 public:
  ClassParams(OperatorParams<Scalar> op, Scalar sigma) : op_(std::move(op)), sigma_(sigma) {
    if (!(sigma >= 0 && sigma < 1)) throw DomainError("ClassParams: sigma must lie in [0, 1)");
  }

  const OperatorParams<Scalar>& op() const { return op_; }
  Scalar sigma() const { return sigma_; }
  int ell() const { return op_.ell(); }

  /// ell(ell - 2 - sigma), the right-hand side of the coefficient condition.
  Scalar bound() const { return Scalar(ell()) * (Scalar(ell() - 2) - sigma_); }
  bool degenerate() const { return !(Scalar(ell() - 2) - sigma_ > 0); }

  bool operator==(const ClassParams&) const = default;

 private:
  OperatorParams<Scalar> op_;
  Scalar sigma_;
};

using ClassParamsd = ClassParams<double>;

/// (k(k-1) + k(1-sigma), k(k-1) - k(1+sigma)) = (k(k-sigma), k(k-2-sigma)).
template <typename Scalar>
std::pair<Scalar, Scalar> weight_pair(int kappa, Scalar sigma) {
  if (kappa < 1) throw DomainError("weight_pair: kappa must be >= 1");
  const Scalar k(kappa);
  return {k * (k - sigma), k * (k - Scalar(2) - sigma)};
}

namespace detail {

template <typename Scalar>
void require_same_ell(int series_ell, const ClassParams<Scalar>& cp, const char* who) {
  if (series_ell != cp.ell())
    throw MismatchError(std::string(who) + ": series has ell=" + std::to_string(series_ell) +
                        " but class has ell=" + std::to_string(cp.ell()));
}

}  // namespace detail

template <typename Scalar>
Scalar coefficient_sum(const HarmonicSeries<Scalar>& f, const ClassParams<Scalar>& cp) {
  detail::require_same_ell(f.ell(), cp, "coefficient_sum");
  const auto phi = multiplier_table(cp.op(), f.truncation());
  const int ell = f.ell();
  Scalar sum(0);
  for (Eigen::Index i = 0; i < f.b_coeffs().size(); ++i) {
    const int k = ell + int(i);
    const auto [wa, wb] = weight_pair(k, cp.sigma());
    if (i > 0) sum += wa * phi(i) * std::abs(f.a_coeffs()(i - 1));
    sum += wb * phi(i) * std::abs(f.b_coeffs()(i));
  }
  return sum;
}

/// ell(ell-2-sigma) - S(f). Nonnegative margin is the sufficient membership condition.
template <typename Scalar>
Scalar margin(const HarmonicSeries<Scalar>& f, const ClassParams<Scalar>& cp) {
  return cp.bound() - coefficient_sum(f, cp);
}

/// |theta + (1-alpha)| >= |theta - (1+alpha)|, which is equivalent to Re(theta) >= alpha.
template <typename Scalar>
bool re_ge_alpha_modulus(const std::complex<Scalar>& theta, Scalar alpha) {
  return std::abs(theta + (Scalar(1) - alpha)) >= std::abs(theta - (Scalar(1) + alpha));
}

/// A(z)/B(z) for a series that has already been transformed by the operator.
template <typename Scalar>
std::complex<Scalar> transformed_ratio(const HarmonicSeries<Scalar>& hf, const std::complex<Scalar>& z) {
  using Complex = std::complex<Scalar>;
  detail::require_in_disk(z, "analytic_ratio");
  if (z == Complex(0)) return Complex(Scalar(hf.ell() - 1));
  const Complex z2 = z * z;
  const Complex num = z2 * eval_part_derivative(hf, Part::Analytic, 2, z) -
                      std::conj(z2 * eval_part_derivative(hf, Part::CoAnalytic, 2, z));
  const Complex den = z * eval_part_derivative(hf, Part::Analytic, 1, z) +
                      std::conj(z * eval_part_derivative(hf, Part::CoAnalytic, 1, z));
  if (std::abs(den) < Scalar(1e-300))
    throw SingularityError("analytic_ratio: denominator vanishes",
                           std::complex<double>(double(z.real()), double(z.imag())));
  return num / den;
}

template <typename Scalar>
std::complex<Scalar> analytic_ratio(const HarmonicSeries<Scalar>& f, const ClassParams<Scalar>& cp,
                                    const std::complex<Scalar>& z) {
  detail::require_same_ell(f.ell(), cp, "analytic_ratio");
  return transformed_ratio(apply_operator(f, cp.op()), z);
}

template <typename Scalar>
struct GridMinimum {
  Scalar value;
  std::complex<Scalar> argmin;
  std::size_t radius_index;
  int angle_index;
};

namespace detail {

// Radius-major scan with strict '<', so ties resolve to the smallest radius then the smallest angle.
template <typename Scalar, typename Fn>
GridMinimum<Scalar> scan_grid(const DiskGrid& grid, Fn&& value_at) {
  GridMinimum<Scalar> best{std::numeric_limits<Scalar>::infinity(), {}, 0, 0};
  bool first = true;
  for (std::size_t i = 0; i < grid.r_values().size(); ++i) {
    for (int j = 0; j < grid.angles_per_radius(); ++j) {
      const auto z = grid.point<Scalar>(i, j);
      const Scalar v = value_at(z);
      if (first || v < best.value) {
        best = {v, z, i, j};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Minimum of Re(A/B) over the grid. SingularityError carries the offending point.
template <typename Scalar>
GridMinimum<Scalar> min_re_over_grid(const HarmonicSeries<Scalar>& f, const ClassParams<Scalar>& cp,
                                     const DiskGrid& grid) {
  detail::require_same_ell(f.ell(), cp, "min_re_over_grid");
  const auto hf = apply_operator(f, cp.op());
  return detail::scan_grid<Scalar>(grid, [&](const std::complex<Scalar>& z) { return transformed_ratio(hf, z).real(); });
}

template <typename Scalar>
GridMinimum<Scalar> min_sense_gap_over_grid(const HarmonicSeries<Scalar>& f, const DiskGrid& grid) {
  return detail::scan_grid<Scalar>(grid, [&](const std::complex<Scalar>& z) { return sense_gap(f, z); });
}

/// Convex weights over the extreme points: z^ell (x_ell), the analytic monomials k = ell+1..N (x),
/// and the co-analytic monomials k = ell..N (y).
template <typename Scalar>
struct ExtremalWeights {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Scalar x_ell;
  Vector x;
  Vector y;

  static ExtremalWeights identity(int ell, int truncation) {
    return {Scalar(1), Vector::Zero(truncation - ell), Vector::Zero(truncation - ell + 1)};
  }

  /// All mass on one extreme point (weight w) with the remainder on z^ell.
  static ExtremalWeights single(int ell, int truncation, int kappa, Part part, Scalar w = Scalar(1)) {
    auto out = identity(ell, truncation);
    if (part == Part::Analytic) {
      if (kappa <= ell || kappa > truncation) throw DomainError("ExtremalWeights: analytic index outside [ell+1, N]");
      out.x(kappa - ell - 1) = w;
    } else {
      if (kappa < ell || kappa > truncation) throw DomainError("ExtremalWeights: co-analytic index outside [ell, N]");
      out.y(kappa - ell) = w;
    }
    out.x_ell = Scalar(1) - w;
    return out;
  }

  int truncation(int ell) const { return ell + int(x.size()); }

  void validate() const {
    if (y.size() != x.size() + 1) throw DomainError("ExtremalWeights: need y.size() == x.size() + 1");
    if (!(x_ell >= 0) || (x.size() > 0 && !(x.minCoeff() >= 0)) || !(y.minCoeff() >= 0))
      throw DomainError("ExtremalWeights: weights must be nonnegative");
    using std::abs;
    const Scalar total = x_ell + x.sum() + y.sum();
    if (abs(total - Scalar(1)) > Scalar(1e-12))
      throw NormalizationError("ExtremalWeights: weights sum to " + std::to_string(double(total)));
  }
};

/// Convex combination of extreme points: a_k = bound * x_k / (k(k-sigma) Phi_k),
/// b_k = bound * y_k / (k(k-2-sigma) Phi_k). Its margin is bound * x_ell.
template <typename Scalar>
HarmonicSeries<Scalar> extremal_function(const ExtremalWeights<Scalar>& w, const ClassParams<Scalar>& cp) {
  if (cp.degenerate()) throw DegenerateClassError("extremal_function: ell - 2 - sigma <= 0");
  w.validate();
  const int ell = cp.ell();
  const int n = w.truncation(ell);
  const auto phi = multiplier_table(cp.op(), n);
  const Scalar bound = cp.bound();
  HarmonicSeries<Scalar> f(ell, n);
  for (int k = ell; k <= n; ++k) {
    const auto [wa, wb] = weight_pair(k, cp.sigma());
    const Scalar phik = phi(k - ell);
    if (k > ell) f.set_a(k, bound * w.x(k - ell - 1) / (wa * phik));
    f.set_b(k, bound * w.y(k - ell) / (wb * phik));
  }
  return f;
}

/// Hadamard product: a_k c_k and b_k d_k; the truncation is the smaller of the two.
template <typename Scalar>
HarmonicSeries<Scalar> convolve(const HarmonicSeries<Scalar>& f, const HarmonicSeries<Scalar>& m) {
  if (f.ell() != m.ell()) throw MismatchError("convolve: valence mismatch");
  const auto na = std::min(f.a_coeffs().size(), m.a_coeffs().size());
  typename HarmonicSeries<Scalar>::CoeffVector a = f.a_coeffs().head(na).cwiseProduct(m.a_coeffs().head(na));
  typename HarmonicSeries<Scalar>::CoeffVector b = f.b_coeffs().head(na + 1).cwiseProduct(m.b_coeffs().head(na + 1));
  return HarmonicSeries<Scalar>(f.ell(), std::move(a), std::move(b));
}

/// Coefficient action of F_u(f)(z) = (u+ell)/z^u * int_0^z t^(u-1) f(t) dt: a_k, b_k scaled by (u+ell)/(k+u).
template <typename Scalar>
HarmonicSeries<Scalar> bernardi(const HarmonicSeries<Scalar>& f, Scalar u) {
  if (!(u > Scalar(-1))) throw DomainError("bernardi: u must exceed -1");
  const int ell = f.ell();
  auto a = f.a_coeffs();
  auto b = f.b_coeffs();
  const Scalar num = u + Scalar(ell);
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const Scalar factor = num / (Scalar(ell + int(i)) + u);
    if (i > 0) a(i - 1) *= factor;
    b(i) *= factor;
  }
  return HarmonicSeries<Scalar>(ell, std::move(a), std::move(b));
}

template <typename Scalar>
struct MembershipReport {
  Scalar margin;
  Scalar coefficient_sum;
  Scalar bound;
  Scalar min_re;
  std::complex<Scalar> argmin_z;
  Scalar sense_gap_min;
  bool sufficient_verdict;
  bool analytic_verdict;
  bool degenerate;
  DiskGrid grid;
};

/// Runs the coefficient test and the grid test independently; neither verdict implies the other.
template <typename Scalar>
MembershipReport<Scalar> check_membership(const HarmonicSeries<Scalar>& f, const ClassParams<Scalar>& cp,
                                          const DiskGrid& grid) {
  const Scalar s = coefficient_sum(f, cp);
  const Scalar m = cp.bound() - s;
  const auto re = min_re_over_grid(f, cp, grid);
  const auto sg = min_sense_gap_over_grid(f, grid);
  return {m, s, cp.bound(), re.value, re.argmin, sg.value, m >= 0, re.value >= cp.sigma(), cp.degenerate(), grid};
}

}  // namespace pqharm

#endif  // PQHARM_CLASSCHECK_HPP
