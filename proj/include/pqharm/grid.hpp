#ifndef PQHARM_GRID_HPP
#define PQHARM_GRID_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pqharm/errors.hpp"

namespace pqharm {

/// Polar sample of the disk |z| <= r_max < 1: every radius paired with the angles 2*pi*j/angles.
class DiskGrid {
 public:
  DiskGrid(std::vector<double> r_values, int angles_per_radius, double r_max)
      : r_values_(std::move(r_values)), angles_(angles_per_radius), r_max_(r_max) {
    if (!(r_max_ > 0 && r_max_ < 1)) throw DomainError("DiskGrid: r_max must lie in (0, 1)");
    if (angles_ < 1) throw DomainError("DiskGrid: angles_per_radius must be >= 1");
    if (r_values_.empty()) throw DomainError("DiskGrid: no radii");
    for (std::size_t i = 0; i < r_values_.size(); ++i) {
      const double r = r_values_[i];
      if (!(r > 0 && r <= r_max_)) throw DomainError("DiskGrid: radius outside (0, r_max]");
      if (i > 0 && !(r > r_values_[i - 1])) throw DomainError("DiskGrid: radii must be strictly ascending");
    }
  }

  /// `radii` radii evenly spaced on (0, r_max].
  static DiskGrid uniform(int radii, int angles, double r_max) {
    if (radii < 1) throw DomainError("DiskGrid: radii must be >= 1");
    std::vector<double> r(radii);
    for (int i = 0; i < radii; ++i) r[i] = r_max * double(i + 1) / double(radii);
    return DiskGrid(std::move(r), angles, r_max);
  }

  static DiskGrid default_grid() { return uniform(64, 256, 0.995); }

  const std::vector<double>& r_values() const { return r_values_; }
  int angles_per_radius() const { return angles_; }
  double r_max() const { return r_max_; }
  std::size_t size() const { return r_values_.size() * std::size_t(angles_); }

  /// Point (i, j) in radius-major order; this order defines the argmin tie-break.
  template <typename Scalar = double>
  std::complex<Scalar> point(std::size_t radius_index, int angle_index) const {
    const double theta = 2.0 * std::numbers::pi * double(angle_index) / double(angles_);
    const auto z = std::polar(r_values_[radius_index], theta);
    return {Scalar(z.real()), Scalar(z.imag())};
  }

  bool operator==(const DiskGrid&) const = default;

 private:
  std::vector<double> r_values_;
  int angles_;
  double r_max_;
};

}  // namespace pqharm

#endif  // PQHARM_GRID_HPP
