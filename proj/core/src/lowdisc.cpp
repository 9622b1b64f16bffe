#include "fockdim/lowdisc.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "fockdim/error.hpp"
#include "fockdim/philox.hpp"

namespace fockdim {

namespace {

double generalized_golden_ratio(int d) {
  double x = 2.0;
  for (int it = 0; it < 64; ++it) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

double inverse_normal(double u) {
  constexpr double kEdge = 1e-16;
  u = std::min(std::max(u, kEdge), 1.0 - kEdge);
  return std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u - 1.0);
}

// Maps points of [0,1)^(2n) to the sphere; skips points that land on the origin.
std::vector<SpherePoint> map_to_sphere(const RdSequence& seq, int n, std::size_t count,
                                       std::uint64_t first) {
  std::vector<SpherePoint> out;
  out.reserve(count);
  for (std::uint64_t i = first; out.size() < count; ++i) {
    SpherePoint p(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double re = inverse_normal(seq.coord(i, 2 * j));
      const double im = inverse_normal(seq.coord(i, 2 * j + 1));
      p[static_cast<std::size_t>(j)] = {re, im};
      norm2 += re * re + im * im;
    }
    if (!(norm2 > 0)) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : p) c *= inv;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

RdSequence::RdSequence(int dim, std::vector<double> shift) : shift_(std::move(shift)) {
  if (dim < 1) throw InvalidArgument("sequence dimension must be positive");
  const double phi = generalized_golden_ratio(dim);
  alpha_.resize(static_cast<std::size_t>(dim));
  double a = 1.0;
  for (int j = 0; j < dim; ++j) {
    a /= phi;
    alpha_[static_cast<std::size_t>(j)] = a;
  }
  if (shift_.empty()) shift_.assign(static_cast<std::size_t>(dim), 0.5);
  if (shift_.size() != alpha_.size()) throw InvalidArgument("shift dimension mismatch");
}

double RdSequence::coord(std::uint64_t i, int j) const noexcept {
  const auto jj = static_cast<std::size_t>(j);
  const long double x = static_cast<long double>(shift_[jj]) +
                        static_cast<long double>(i) * static_cast<long double>(alpha_[jj]);
  return static_cast<double>(x - std::floor(x));
}

std::vector<SpherePoint> lowdisc_sphere(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("sphere dimension must be positive");
  std::vector<double> shift(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < 2 * n; ++j) {
    const auto r = Philox4x32::at(seed, static_cast<std::uint64_t>(j), 0, streams::kShift);
    shift[static_cast<std::size_t>(j)] = uniform_open(r[0], r[1]);
  }
  return map_to_sphere(RdSequence(2 * n, std::move(shift)), n, count, 0);
}

std::vector<SpherePoint> direction_set(int n, std::size_t count) {
  if (n < 1) throw InvalidArgument("sphere dimension must be positive");
  std::vector<SpherePoint> out;
  out.reserve(count);
  for (int j = 0; j < n && out.size() < count; ++j) {
    SpherePoint e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(j)] = 1.0;
    out.push_back(std::move(e));
  }
  if (out.size() < count) {
    auto rest = map_to_sphere(RdSequence(2 * n), n, count - out.size(), 1);
    for (auto& p : rest) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace fockdim
