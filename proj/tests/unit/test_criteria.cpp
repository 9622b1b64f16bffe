#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fockdim/criteria.hpp"
#include "fockdim/error.hpp"
#include "fockdim/membership.hpp"
#include "fockdim/riesz.hpp"
#include "fockdim/weight.hpp"
#include "oracles.hpp"

using namespace fockdim;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

double param(const CriterionReport& r, const std::string& key) {
  for (const auto& [k, v] : r.parameters)
    if (k == key) return v;
  FAIL("missing parameter " << key);
  return 0.0;
}

// Plurisubharmonic weights on C^2 used by the corpus-level properties.
const char* const kPshCorpus[] = {
    "abs2(z1)+abs2(z2)",
    "log(1+normsq(2))^1.5",
    "abs2(z1)+2*log(1+abs2(z2))",
    "abs2(z1)+abs2(z2)+log(1+normsq(2))",
    "2.5*log(1+normsq(2))",
};

}  // namespace

TEST_SUITE("criteria") {

TEST_CASE("Shigekawa examples") {
  const auto radii = default_shigekawa_radii();
  const CriterionReport gauss = shigekawa_check(parse("abs2(z1)+abs2(z2)"), radii);
  CHECK(gauss.verdict == CriterionVerdict::Satisfied);
  REQUIRE(gauss.samples.size() == radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i)
    CHECK(gauss.samples[i].statistic == doctest::Approx(radii[i] * radii[i]).epsilon(1e-10));

  const CriterionReport log32 = shigekawa_check(parse("log(1+normsq(2))^1.5"), radii);
  CHECK(log32.verdict == CriterionVerdict::Violated);
  REQUIRE(log32.witness);
  CHECK(log32.samples.back().statistic < log32.samples.front().statistic);

  const CriterionReport logm = shigekawa_check(parse("3*log(1+normsq(2))"), radii);
  CHECK(logm.verdict == CriterionVerdict::Violated);

  const double two[2] = {1.0, 2.0};
  CHECK_THROWS_AS(shigekawa_check(parse("abs2(z1)"), two), InvalidArgument);
}

TEST_CASE("psh outside a compact set: zw example") {
  const WeightExpr psi = parse("abs2(z1)+2*log(1+abs2(z2))");
  const CriterionReport r = psh_outside_compact(psi, 3.0, 1.0L, 0.0L);
  REQUIRE(r.verdict == CriterionVerdict::Violated);
  REQUIRE(r.witness);
  REQUIRE_FALSE(r.witness->point_is_direction);
  CHECK(std::abs(std::abs(r.witness->point[0]) - 1.0) < 0.5);

  // Independent re-evaluation: finite differences of psi - 3 log|z|^2 at the witness.
  const oracle::Fn f = [](const std::vector<cd>& z) {
    const double a = std::norm(z[0]);
    const double b = std::norm(z[1]);
    return a + 2 * std::log1p(b) - 3 * std::log(a + b);
  };
  const std::vector<cd> w = r.witness->point;
  const auto L = oracle::levi_fd(f, w);
  const auto ev = oracle::eigenvalues(L, 2);
  CHECK(ev.front() < -1e-6);
}

TEST_CASE("psh outside a compact set: power sum example") {
  const WeightExpr psi = parse("abs2(z1^3+z2^3)");
  const CriterionReport r = psh_outside_compact_scan(psi, 1.0);
  REQUIRE(r.verdict == CriterionVerdict::Violated);
  REQUIRE(r.witness);
  REQUIRE_FALSE(r.witness->point_is_direction);
  // Closed-form determinant -(9 M / |z|^4) |P|^2 is negative off the zero set of P.
  const cd z1 = r.witness->point[0];
  const cd z2 = r.witness->point[1];
  const double r2 = std::norm(z1) + std::norm(z2);
  const double p2 = std::norm(z1 * z1 * z1 + z2 * z2 * z2);
  CHECK(p2 > 0.0);
  CHECK(-(9.0 / (r2 * r2)) * p2 < 0.0);
}

TEST_CASE("psh outside a compact set: log^(3/2) example") {
  const WeightExpr psi = parse("log(1+normsq(2))^1.5");
  for (double M : {1.0, 10.0, 100.0}) {
    CAPTURE(M);
    const CriterionReport r = psh_outside_compact_scan(psi, M);
    CHECK(r.verdict == CriterionVerdict::Satisfied);
    CHECK(param(r, "M") == M);
    CHECK_FALSE(r.samples.empty());
  }
}

TEST_CASE("M = 0 reduces to plurisubharmonicity") {
  for (const char* text : kPshCorpus) {
    CAPTURE(text);
    const CriterionReport r = psh_outside_compact(parse(text), 0.0, 1.0L, 0.0L);
    CHECK(r.verdict == CriterionVerdict::Satisfied);
  }
}

TEST_CASE("Violated reports carry a witness") {
  for (const char* text : kPshCorpus) {
    for (double M : {1.0, 3.0, 10.0}) {
      const CriterionReport r = psh_outside_compact(parse(text), M, 1.0L, 0.0L);
      CHECK_FALSE(r.samples.empty());
      if (r.verdict == CriterionVerdict::Violated) {
        REQUIRE(r.witness);
        CHECK(r.witness->statistic < 0.0);
      }
    }
  }
}

TEST_CASE("Shigekawa implies psh outside a compact set") {
  const auto radii = default_shigekawa_radii();
  for (const char* text : kPshCorpus) {
    const WeightExpr psi = parse(text);
    if (shigekawa_check(psi, radii).verdict != CriterionVerdict::Satisfied) continue;
    for (double M : {1.0, 10.0, 100.0}) {
      CAPTURE(text);
      CAPTURE(M);
      CHECK(psh_outside_compact_scan(psi, M).verdict == CriterionVerdict::Satisfied);
    }
  }
}

TEST_CASE("radial criterion") {
  const auto schedule = default_radial_schedule();
  CHECK(radial_criterion(parse("t"), schedule).verdict == CriterionVerdict::Satisfied);
  const CriterionReport b = radial_criterion(parse("2.5*log(1+t)"), schedule);
  CHECK(b.verdict == CriterionVerdict::Violated);
  REQUIRE(b.fitted_limit);
  CHECK(std::abs(*b.fitted_limit - 2.5) <= 1e-6);
  CHECK(radial_criterion(parse("log(1+t)^1.5"), schedule).verdict == CriterionVerdict::Satisfied);
}

TEST_CASE("radial criterion matches the one-variable dimension") {
  const auto schedule = default_radial_schedule();
  for (const char* text : {"t", "2.5*log(1+t)", "log(1+t)^1.5", "0.5*log(1+t)", "t+log(1+t)"}) {
    CAPTURE(text);
    const WeightExpr phi = parse(text);
    const CriterionReport r = radial_criterion(phi, schedule);
    QuadConfig q;
    const DimReport d = fock_dimension(radial_weight(phi, 1), {}, q);
    REQUIRE(r.verdict != CriterionVerdict::Inconclusive);
    REQUIRE(d.verdict != DimVerdict::Inconclusive);
    CHECK((r.verdict == CriterionVerdict::Satisfied) == (d.verdict == DimVerdict::InfiniteDim));
  }
}

TEST_CASE("Monge-Ampere mass of radial weights") {
  const auto schedule = default_radial_schedule();
  for (double a : {0.5, 2.5, 4.0}) {
    const MeasureEstimate m = monge_ampere_mass(a * parse("log(1+t)"), 2, schedule);
    CHECK(m.classification == MassClass::Finite);
    CHECK(m.value == doctest::Approx(a * a).epsilon(1e-6));
  }
  CHECK(monge_ampere_mass(parse("t"), 1, schedule).classification == MassClass::Infinite);
  CHECK(monge_ampere_mass(parse("log(1+t)^1.5"), 2, schedule).classification == MassClass::Infinite);
}

TEST_CASE("separable weights") {
  const QuadConfig q;
  const SeparableComponent log25{"log", parse("2.5*log(1+abs2(z))"), {}, {}};
  const SeparableComponent gauss{"gauss", parse("abs2(z)"), {}, {}};
  const SeparableComponent tent{"tent", std::nullopt,
                                [](cd z) { return std::max(1.0 - std::abs(z), 0.0); }, {}};

  const SeparableComponent pair[] = {log25, log25};
  const SeparableReport a = separable_dimension(pair, q);
  CHECK(a.combined.verdict == DimVerdict::FiniteDim);
  CHECK(a.combined.dim == 4);

  const SeparableComponent gg[] = {gauss, gauss};
  CHECK(separable_dimension(gg, q).combined.verdict == DimVerdict::InfiniteDim);

  const SeparableComponent gt[] = {gauss, tent};
  const SeparableReport z = separable_dimension(gt, q);
  CHECK(z.combined.verdict == DimVerdict::ZeroDim);
  CHECK(z.combined.dim == 0);
}

TEST_CASE("separable product agrees with monomial counting") {
  const WeightExpr psi = parse("2.5*log(1+abs2(z1))+2.5*log(1+abs2(z2))");
  CHECK(dimension_lower_bound(psi, 6, QuadConfig{}).count == 4);
}

TEST_CASE("counterexample") {
  const CounterexampleReport c = counterexample_report();
  REQUIRE(c.separable.components.size() == 2);
  CHECK(std::abs(c.separable.components[1].mass_c - kPi / 3) <= 1e-6);
  CHECK(c.separable.components[1].dim == 0);
  CHECK(c.separable.components[0].verdict == DimVerdict::InfiniteDim);
  CHECK(c.separable.combined.verdict == DimVerdict::ZeroDim);
  CHECK(c.monge_ampere.classification == MassClass::Infinite);
  CHECK(c.contradiction);
}

}
