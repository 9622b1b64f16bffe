#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "fockdim/error.hpp"
#include "fockdim/sphere.hpp"

using namespace fockdim;
using cd = std::complex<double>;

TEST_SUITE("sphere-mc") {

TEST_CASE("sphere area") {
  CHECK(sphere_area(1) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_area(2) == doctest::Approx(2 * std::pow(std::numbers::pi, 2)));
  CHECK(sphere_area(3) == doctest::Approx(std::pow(std::numbers::pi, 3)));
}

TEST_CASE("samples lie on the unit sphere") {
  for (int n : {1, 2, 3, 5}) {
    for (const SpherePoint& z : sample_sphere(n, 2000, 3)) {
      double s = 0.0;
      for (cd c : z) s += std::norm(c);
      CHECK(std::abs(s - 1.0) <= 1e-14);
    }
    for (const SpherePoint& z : lowdisc_sphere(n, 500, 3)) {
      double s = 0.0;
      for (cd c : z) s += std::norm(c);
      CHECK(std::abs(s - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("first moment of |zeta_1|^2") {
  const auto pts = sample_sphere(2, 1000000, 42);
  double m = 0.0;
  for (const auto& z : pts) m += std::norm(z[0]);
  m /= static_cast<double>(pts.size());
  CHECK(std::abs(m - 0.5) <= 0.002);
}

TEST_CASE("sample streams are deterministic and seed dependent") {
  const auto a = sample_sphere(3, 1000, 99);
  const auto b = sample_sphere(3, 1000, 99);
  const auto c = sample_sphere(3, 1000, 100);
  CHECK(a == b);
  CHECK(a != c);
  for (std::uint64_t i : {0ull, 17ull, 999ull}) CHECK(sphere_sample(3, i, 99) == a[i]);
}

TEST_CASE("T_eps examples") {
  const PowerSum p3{3, 2};
  const TEpsEstimate all = t_eps_measure(p3, 3.0, 10000, 5);
  CHECK(all.estimate == 1.0);
  CHECK(all.std_error == 0.0);

  std::vector<double> eps;
  for (int j = 3; j <= 7; ++j) eps.push_back(std::ldexp(1.0, -j));
  const auto sweep = t_eps_sweep(p3, eps, 1000000, 7);
  CHECK(std::abs(t_eps_slope(sweep).slope - 2.0) <= 0.3);

  const PowerSum p4{4, 3};
  std::vector<double> small;
  for (int j = 4; j <= 8; ++j) small.push_back(std::ldexp(1.0, -j));
  CHECK(t_eps_slope(t_eps_sweep(p4, small, 1000000, 7)).slope >= 1.0);
}

TEST_CASE("T_eps is monotone in eps on a shared sample set") {
  std::vector<double> eps;
  for (int j = 0; j <= 40; ++j) eps.push_back(0.01 + 0.05 * j);
  const auto sweep = t_eps_sweep(PowerSum{3, 2}, eps, 20000, 1);
  for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(sweep[i].estimate >= sweep[i - 1].estimate);
}

TEST_CASE("permutation and phase symmetry") {
  const PowerSum p{4, 3};
  const auto base = sample_sphere(3, 200000, 21);
  std::vector<SpherePoint> permuted = base;
  std::vector<SpherePoint> rotated = base;
  const cd phase = std::polar(1.0, 0.7);
  for (auto& z : permuted) std::rotate(z.begin(), z.begin() + 1, z.end());
  for (auto& z : rotated)
    for (cd& c : z) c *= phase;
  // Fresh samples so the comparison is not trivially exact.
  const std::vector<SpherePoint> fresh = sample_sphere(3, 200000, 22);
  for (double eps : {0.05, 0.2, 0.5}) {
    const TEpsEstimate a = t_eps_measure(p, eps, base);
    for (const std::vector<SpherePoint>* other : {&std::as_const(permuted), &std::as_const(rotated), &fresh}) {
      const TEpsEstimate b = t_eps_measure(p, eps, *other);
      CHECK(std::abs(a.estimate - b.estimate) <= 3 * std::hypot(a.std_error, b.std_error) + 1e-15);
    }
  }
}

TEST_CASE("standard error scales like count^(-1/2)") {
  const PowerSum p{3, 2};
  const TEpsEstimate a = t_eps_measure(p, 0.25, 100000, 3);
  const TEpsEstimate b = t_eps_measure(p, 0.25, 200000, 3);
  const TEpsEstimate c = t_eps_measure(p, 0.25, 400000, 3);
  CHECK(c.std_error / a.std_error == doctest::Approx(0.5).epsilon(0.2));
  CHECK(b.std_error / a.std_error == doctest::Approx(1 / std::numbers::sqrt2).epsilon(0.2));
}

TEST_CASE("singular sphere integrals") {
  for (auto [n, k] : {std::pair{2, 3}, std::pair{3, 4}}) {
    CAPTURE(n);
    CAPTURE(k);
    const SingularEstimate s = singular_sphere_integral(PowerSum{k, n}, 200000, 11);
    CHECK(s.estimate.classification == MassClass::Finite);
    CHECK(s.estimate.value > 0.0);
    CHECK(s.reference_ratio == doctest::Approx(std::pow(2.0, -2.0 * (1.0 - 2.0 / k))));
    std::size_t total = 0;
    for (const LevelSum& l : s.levels) total += l.count;
    CHECK(total <= 200000);
  }
  const SingularEstimate k2 = singular_sphere_integral(PowerSum{2, 2}, 200000, 11);
  CHECK(k2.estimate.classification != MassClass::Finite);
}

TEST_CASE("singular integral is reproducible across worker counts") {
  Execution one;
  Execution four;
  four.threads = 4;
  const SingularEstimate a = singular_sphere_integral(PowerSum{3, 2}, 100000, 5, one);
  const SingularEstimate b = singular_sphere_integral(PowerSum{3, 2}, 100000, 5, four);
  CHECK(a.estimate.value == b.estimate.value);
  CHECK(a.estimate.abs_error == b.estimate.abs_error);
  CHECK(a.level_ratio == b.level_ratio);
}

TEST_CASE("Lelong numbers") {
  const PowerSum p{3, 2};
  const cd zero[2] = {1.0, -1.0};
  const cd regular[2] = {1.0, 0.0};
  CHECK(std::abs(lelong_estimate(p, zero).value - 1.0) <= 0.05);
  CHECK(std::abs(lelong_estimate(p, regular).value) <= 0.05);

  const PowerSum sq{2, 2};
  const cd a[2] = {1.0, 0.0};
  CHECK(std::abs(lelong_estimate(sq, a).value) <= 0.05);

  const cd origin[2] = {0.0, 0.0};
  CHECK_THROWS_AS(lelong_estimate(p, origin), InvalidArgument);
  const double bad[2] = {0.1, 0.5};
  CHECK_THROWS_AS(lelong_estimate(p, zero, bad), InvalidArgument);
}

}
