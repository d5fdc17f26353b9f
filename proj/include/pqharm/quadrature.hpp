#ifndef PQHARM_QUADRATURE_HPP
#define PQHARM_QUADRATURE_HPP

// Globally adaptive 7/15-point Gauss-Kronrod quadrature for complex-valued integrands.

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "pqharm/errors.hpp"

namespace pqharm::quad {

struct Result {
  std::complex<double> value;
  double error_estimate;
  int intervals;
};

namespace detail {

// Kronrod abscissae (positive half, descending to 0) and weights; Gauss weights sit on the odd entries.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double lo, hi;
  std::complex<double> value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <typename Fn>
Piece gauss_kronrod_15(Fn& fn, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::complex<double> kronrod = kKronrodWeights[7] * fn(center);
  std::complex<double> gauss = kGaussWeights[3] * fn(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const std::complex<double> pair = fn(center - dx) + fn(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integrate fn over [lo, hi] until the summed error estimate is below max(abs_tol, rel_tol*|I|).
/// Endpoints are never evaluated. Throws QuadratureError when max_intervals is exhausted.
template <typename Fn>
Result integrate(Fn fn, double lo, double hi, double rel_tol = 1e-10, double abs_tol = 0.0,
                 int max_intervals = 4000) {
  std::priority_queue<detail::Piece> pieces;
  auto first = detail::gauss_kronrod_15(fn, lo, hi);
  std::complex<double> total = first.value;
  double error = first.error;
  pieces.push(first);
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (count >= max_intervals)
      throw QuadratureError("quadrature did not converge", error);
    const auto worst = pieces.top();
    pieces.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi))
      throw QuadratureError("quadrature interval underflow", error);
    const auto left = detail::gauss_kronrod_15(fn, worst.lo, mid);
    const auto right = detail::gauss_kronrod_15(fn, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    pieces.push(left);
    pieces.push(right);
    ++count;
  }
  // Re-sum to shed the drift accumulated by the running updates.
  std::complex<double> sum = 0;
  double err = 0;
  while (!pieces.empty()) {
    sum += pieces.top().value;
    err += pieces.top().error;
    pieces.pop();
  }
  return {sum, err, count};
}

}  // namespace pqharm::quad

#endif  // PQHARM_QUADRATURE_HPP
