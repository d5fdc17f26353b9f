#ifndef PQHARM_PQ_HPP
#define PQHARM_PQ_HPP

// Scalar (p,q)-calculus: brackets, factorials and shifted factorials.

#include <cmath>
#include <string>

#include "pqharm/errors.hpp"

namespace pqharm {

/// Deformation pair with 0 < q < p <= 1.
template <typename Scalar>
class PQParams {
 public:
  PQParams(Scalar p, Scalar q) : p_(p), q_(q) {
    if (!(std::isfinite(p) && std::isfinite(q)) || !(q > 0 && q < p && p <= 1))
      throw DomainError("PQParams: require 0 < q < p <= 1, got p=" + std::to_string(double(p)) +
                        " q=" + std::to_string(double(q)));
  }

  Scalar p() const { return p_; }
  Scalar q() const { return q_; }

  bool operator==(const PQParams&) const = default;

 private:
  Scalar p_;
  Scalar q_;
};

using PQParamsd = PQParams<double>;

namespace detail {

// No validation; the formula is symmetric in (p, q).
template <typename Scalar>
Scalar bracket_formula(Scalar x, Scalar p, Scalar q) {
  using std::pow;
  return (pow(p, x) - pow(q, x)) / (p - q);
}

}  // namespace detail

/// [x]_{p,q} = (p^x - q^x)/(p - q) for real x >= 0.
template <typename Scalar>
Scalar bracket_pq(Scalar x, const PQParams<Scalar>& pq) {
  if (!(x >= 0)) throw DomainError("bracket_pq: x must be >= 0");
  return detail::bracket_formula(x, pq.p(), pq.q());
}

/// [x]_q = (1 - q^x)/(1 - q), the p = 1 specialisation.
template <typename Scalar>
Scalar bracket_q(Scalar x, Scalar q) {
  if (!(q > 0 && q < 1)) throw DomainError("bracket_q: q must lie in (0, 1)");
  if (!(x >= 0)) throw DomainError("bracket_q: x must be >= 0");
  return detail::bracket_formula(x, Scalar(1), q);
}

/// [n]_{p,q}! = [1][2]...[n]; empty product is 1.
template <typename Scalar>
Scalar factorial_pq(int n, const PQParams<Scalar>& pq) {
  if (n < 0) throw DomainError("factorial_pq: n must be >= 0");
  Scalar prod(1);
  for (int k = 1; k <= n; ++k) prod *= bracket_pq(Scalar(k), pq);
  return prod;
}

/// ([a]_{p,q})_n = [a][a+1]...[a+n-1]; empty product is 1.
template <typename Scalar>
Scalar pochhammer_pq(Scalar a, int n, const PQParams<Scalar>& pq) {
  if (!(a > 0)) throw DomainError("pochhammer_pq: base must be > 0");
  if (n < 0) throw DomainError("pochhammer_pq: n must be >= 0");
  Scalar prod(1);
  for (int j = 0; j < n; ++j) prod *= bracket_pq(a + Scalar(j), pq);
  return prod;
}

}  // namespace pqharm

#endif  // PQHARM_PQ_HPP
