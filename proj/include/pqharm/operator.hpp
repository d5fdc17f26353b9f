#ifndef PQHARM_OPERATOR_HPP
#define PQHARM_OPERATOR_HPP

// The linear operator H^delta_{p,q,ell} acting on truncated series as the coefficient multiplier
//   Phi_k = ([k + ell - 1]_q)^t * ([delta + ell]_{p,q})_{k - ell} / [k - ell]_{p,q}!
// applied to a_k (k > ell) and b_k (k >= ell). The leading z^ell of h is left alone.

#include <Eigen/Core>

#include <string>

#include "pqharm/errors.hpp"
#include "pqharm/pq.hpp"
#include "pqharm/series.hpp"

namespace pqharm {

template <typename Scalar>
class OperatorParams {
 public:
  OperatorParams(PQParams<Scalar> pq, int ell, Scalar delta, int t) : pq_(pq), ell_(ell), delta_(delta), t_(t) {
    if (ell < 1) throw DomainError("OperatorParams: ell must be >= 1");
    if (!(delta > Scalar(-ell))) throw DomainError("OperatorParams: delta must exceed -ell");
    if (t < 0) throw DomainError("OperatorParams: t must be >= 0");
  }

  const PQParams<Scalar>& pq() const { return pq_; }
  int ell() const { return ell_; }
  Scalar delta() const { return delta_; }
  int t() const { return t_; }

  /// t = 0, delta = 1 - ell: every multiplier is exactly one.
  static OperatorParams identity(PQParams<Scalar> pq, int ell) { return OperatorParams(pq, ell, Scalar(1 - ell), 0); }

  bool operator==(const OperatorParams&) const = default;

 private:
  PQParams<Scalar> pq_;
  int ell_;
  Scalar delta_;
  int t_;
};

using OperatorParamsd = OperatorParams<double>;

template <typename Scalar>
Scalar multiplier(int kappa, const OperatorParams<Scalar>& params) {
  const int ell = params.ell();
  if (kappa < ell) throw DomainError("multiplier: kappa must be >= ell");
  const int n = kappa - ell;
  Scalar salagean(1);
  const Scalar qb = bracket_q(Scalar(kappa + ell - 1), params.pq().q());
  for (int i = 0; i < params.t(); ++i) salagean *= qb;
  // Pochhammer over factorial, paired factor by factor so neither side underflows on its own.
  Scalar ratio(1);
  for (int j = 0; j < n; ++j)
    ratio *= bracket_pq(params.delta() + Scalar(ell + j), params.pq()) / bracket_pq(Scalar(j + 1), params.pq());
  return salagean * ratio;
}

/// Phi_k for k = ell..N, indexed by k - ell.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> multiplier_table(const OperatorParams<Scalar>& params, int truncation) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> phi(truncation - params.ell() + 1);
  for (Eigen::Index i = 0; i < phi.size(); ++i) phi(i) = multiplier(params.ell() + int(i), params);
  return phi;
}

template <typename Scalar>
HarmonicSeries<Scalar> apply_operator(const HarmonicSeries<Scalar>& f, const OperatorParams<Scalar>& params) {
  if (f.ell() != params.ell())
    throw MismatchError("apply_operator: series has ell=" + std::to_string(f.ell()) +
                        " but operator has ell=" + std::to_string(params.ell()));
  const auto phi = multiplier_table(params, f.truncation());
  typename HarmonicSeries<Scalar>::CoeffVector a = f.a_coeffs().cwiseProduct(phi.tail(f.a_coeffs().size()).template cast<std::complex<Scalar>>());
  typename HarmonicSeries<Scalar>::CoeffVector b = f.b_coeffs().cwiseProduct(phi.template cast<std::complex<Scalar>>());
  return HarmonicSeries<Scalar>(f.ell(), std::move(a), std::move(b));
}

}  // namespace pqharm

#endif  // PQHARM_OPERATOR_HPP
