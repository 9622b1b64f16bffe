#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace fockdim {

/// A point of the unit sphere in C^n.
using SpherePoint = std::vector<std::complex<double>>;

/// Additive recurrence x_i = frac(shift + i * alpha) with alpha_j = phi_d^-j,
/// phi_d the positive root of x^(d+1) = x + 1.
class RdSequence {
 public:
  explicit RdSequence(int dim, std::vector<double> shift = {});
  int dim() const noexcept { return static_cast<int>(alpha_.size()); }
  /// Coordinate j of point i, in (0, 1).
  double coord(std::uint64_t i, int j) const noexcept;

 private:
  std::vector<double> alpha_;
  std::vector<double> shift_;
};

/// `count` quasi-uniform sphere points: R_d points in [0,1)^(2n) with a
/// seed-keyed random shift, mapped through the inverse normal CDF and normalized.
std::vector<SpherePoint> lowdisc_sphere(int n, std::size_t count, std::uint64_t seed);

/// Deterministic direction set: the n coordinate axes, then unshifted R_d sphere points.
std::vector<SpherePoint> direction_set(int n, std::size_t count);

}  // namespace fockdim
