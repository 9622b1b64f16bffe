#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fockdim/error.hpp"
#include "fockdim/lowdisc.hpp"
#include "fockdim/philox.hpp"
#include "fockdim/stats.hpp"

using namespace fockdim;

TEST_SUITE("rng") {

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) ==
        C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                             {0xffffffffu, 0xffffffffu}) ==
        C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                             {0xa4093822u, 0x299f31d0u}) ==
        C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniform_open stays inside (0, 1)") {
  CHECK(uniform_open(0, 0) > 0.0);
  CHECK(uniform_open(0xffffffffu, 0xffffffffu) < 1.0);
  double mean = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto r = Philox4x32::at(1, static_cast<std::uint64_t>(i), 0, 0);
    mean += uniform_open(r[0], r[1]);
  }
  CHECK(std::abs(mean / n - 0.5) < 0.005);
}

TEST_CASE("Box-Muller moments") {
  double m1 = 0.0;
  double m2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto g = gaussian_pair(Philox4x32::at(9, static_cast<std::uint64_t>(i), 0, 0));
    m1 += g[0] + g[1];
    m2 += g[0] * g[0] + g[1] * g[1];
  }
  CHECK(std::abs(m1 / (2 * n)) < 0.01);
  CHECK(std::abs(m2 / (2 * n) - 1.0) < 0.01);
}

TEST_CASE("R_d sequence") {
  // phi_1 is the golden ratio.
  const RdSequence one(1, {0.0});
  const double alpha = 2.0 / (1.0 + std::sqrt(5.0));
  CHECK(one.coord(1, 0) == doctest::Approx(alpha).epsilon(1e-14));
  CHECK(one.coord(2, 0) == doctest::Approx(2 * alpha - 1).epsilon(1e-14));

  const RdSequence seq(4);
  for (std::uint64_t i = 0; i < 5000; ++i)
    for (int j = 0; j < 4; ++j) {
      const double x = seq.coord(i, j);
      CHECK((x > 0.0 && x < 1.0));
    }
  // Star-like discrepancy check on one coordinate: bin counts stay near uniform.
  std::vector<int> bins(10, 0);
  for (std::uint64_t i = 0; i < 10000; ++i) ++bins[static_cast<std::size_t>(seq.coord(i, 2) * 10)];
  for (int b : bins) CHECK(std::abs(b - 1000) <= 20);
  CHECK_THROWS_AS(RdSequence(2, {0.1}), InvalidArgument);
}

TEST_CASE("direction sets start with the coordinate axes") {
  const auto d = direction_set(3, 10);
  REQUIRE(d.size() == 10);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) CHECK(std::abs(d[j][k]) == (j == k ? 1.0 : 0.0));
  CHECK(direction_set(3, 10) == d);
}

TEST_CASE("least-squares line") {
  const double x[] = {0, 1, 2, 3, 4};
  const double y[] = {1, 3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.slope_se == doctest::Approx(0.0).epsilon(1e-12));

  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i < 400; ++i) {
    xs.push_back(i * 0.01);
    ys.push_back(-0.5 * xs.back() + 2.0 + noise(rng));
  }
  const LineFit g = fit_line(xs, ys);
  CHECK(std::abs(g.slope + 0.5) <= 4 * g.slope_se);
  CHECK(g.slope_se > 0.0);

  const double same[] = {1, 1};
  const double two[] = {0, 1};
  CHECK_THROWS_AS(fit_line(same, two), InvalidArgument);
}

TEST_CASE("Hill estimator on Pareto samples") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double alpha : {0.7, 1.5, 3.0}) {
    CAPTURE(alpha);
    std::vector<double> v(200000);
    for (double& x : v) x = std::pow(1.0 - u(rng), -1.0 / alpha);
    const TailIndex t = hill_tail_index(v);
    CHECK(t.order_stats == static_cast<std::size_t>(std::ceil(4 * std::sqrt(200000.0))));
    CHECK(std::abs(t.index - alpha) <= 4 * t.std_error);
    const TailVerdict m = classify_mean(t);
    if (alpha < 1) CHECK(m == TailVerdict::InfiniteMean);
    else CHECK(m == TailVerdict::FiniteMean);
  }
  // Bounded samples: the upper tail is flat.
  std::vector<double> flat(1000, 2.0);
  CHECK(std::isinf(hill_tail_index(flat).index));
}

}
