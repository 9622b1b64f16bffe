// Acceptance gate: one PASS/FAIL line per criterion at the contractual tolerances.
// Runtime budgets are part of each criterion and are enforced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fockdim/criteria.hpp"
#include "fockdim/hermitian.hpp"
#include "fockdim/membership.hpp"
#include "fockdim/philox.hpp"
#include "fockdim/riesz.hpp"
#include "fockdim/sphere.hpp"
#include "fockdim/wirtinger.hpp"
#include "fockdim_cli/cli.hpp"
#include "oracles.hpp"

using namespace fockdim;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const double kAs[] = {0.5, 1.5, 2.5, 4.0};
const long long kDims[] = {0, 1, 2, 3};

QuadConfig quad_for(double a) {
  QuadConfig q;
  // 4 log(1+|z|^2) has mass exactly 16 pi, on the 4 pi lattice.
  q.exact = a == 4.0;
  return q;
}

WeightExpr log_weight(double a) { return a * parse("log(1+abs2(z1))"); }

Outcome dimension_formula() {
  Outcome o{true, ""};
  for (int i = 0; i < 4; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const DimReport d = fock_dimension(log_weight(kAs[i]), {}, quad_for(kAs[i]));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double dev = std::abs(d.mass_c - 4 * kPi * kAs[i]);
    const bool ok = d.verdict == DimVerdict::FiniteDim && d.dim == kDims[i] && dev < 1e-5 && secs < 5.0;
    o.pass = o.pass && ok;
    o.detail += (i ? "; " : "") + std::string("a=") + fmt(kAs[i]) + " dim " +
                (d.verdict == DimVerdict::FiniteDim ? std::to_string(d.dim) : std::string(to_string(d.verdict))) +
                " |mass-4pi a|=" + fmt(dev);
  }
  return o;
}

Outcome cross_validation() {
  Outcome o{true, ""};
  for (int i = 0; i < 4; ++i) {
    const QuadConfig q = quad_for(kAs[i]);
    const DimReport d = fock_dimension(log_weight(kAs[i]), {}, q);
    const LowerBound lb = dimension_lower_bound(log_weight(kAs[i]), 10, q);
    o.pass = o.pass && d.verdict == DimVerdict::FiniteDim && lb.count == d.dim;
    o.detail += (i ? "; " : "") + std::string("a=") + fmt(kAs[i]) + " bound " + std::to_string(lb.count) +
                " dim " + std::to_string(d.dim);
  }
  return o;
}

Outcome ad_correctness() {
  std::mt19937_64 rng(31337);
  double worst_fd = 0.0;
  double worst_herm = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const oracle::Weight w = oracle::random_weight(n, rng);
    const auto z = oracle::random_point(n, rng);
    const WeightExpr e = parse(w.text).widened(n);
    const HermitianMatrix L = levi(e, z);
    const auto ref = oracle::levi_fd(w.fn, z);
    double dev = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) dev = std::max(dev, std::abs(L.entries()[i] - ref[i]));
    worst_fd = std::max(worst_fd, dev / std::max(1.0, L.norm_inf()));
    const CJet2<double> j = jet_eval(e, z);
    double norm = 0.0;
    double herm = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        norm = std::max(norm, std::abs(j.h(a, b)));
        herm = std::max(herm, std::abs(j.h(a, b) - std::conj(j.h(b, a))));
      }
    worst_herm = std::max(worst_herm, herm / std::max(1.0, norm));
  }
  double worst_spectrum = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const oracle::Profile p = oracle::random_profile(rng);
    const int n = 2 + trial % 3;
    const auto z = oracle::random_point(n, rng, 1.5);
    double t = 0.0;
    for (const auto& c : z) t += std::norm(c);
    const HermitianMatrix L = levi(radial_weight(parse(p.text), n), z);
    std::vector<double> expected(static_cast<std::size_t>(n - 1), p.d1(t));
    expected.push_back(p.d1(t) + t * p.d2(t));
    std::sort(expected.begin(), expected.end());
    const auto ev = eigenvalues(L);
    for (int i = 0; i < n; ++i)
      worst_spectrum = std::max(worst_spectrum, std::abs(ev[i] - expected[i]) / std::max(1.0, L.norm_inf()));
  }
  return {worst_fd < 1e-6 && worst_herm <= 1e-12 && worst_spectrum <= 1e-8,
          "FD rel dev " + fmt(worst_fd) + ", Hermitian dev " + fmt(worst_herm) + ", radial spectrum dev " +
              fmt(worst_spectrum)};
}

Outcome log32_example() {
  const WeightExpr psi = parse("log(1+normsq(2))^1.5");
  const auto radii = default_shigekawa_radii();
  const CriterionReport s = shigekawa_check(psi, radii);
  bool decreasing = true;
  for (std::size_t i = 1; i < s.samples.size(); ++i)
    decreasing = decreasing && s.samples[i].statistic < s.samples[i - 1].statistic;
  Outcome o{s.verdict == CriterionVerdict::Violated && decreasing,
            "Shigekawa " + std::string(to_string(s.verdict)) + ", s(2^4)=" + fmt(s.samples.front().statistic) +
                ", s(2^14)=" + fmt(s.samples.back().statistic)};
  for (double M : {1.0, 10.0, 100.0}) {
    const CriterionReport r = psh_outside_compact_scan(psi, M);
    o.pass = o.pass && r.verdict == CriterionVerdict::Satisfied;
    o.detail += "; psh M=" + fmt(M) + " " + std::string(to_string(r.verdict));
  }
  return o;
}

Outcome zw_example() {
  const WeightExpr psi = parse("abs2(z1)+2*log(1+abs2(z2))");
  const cd z[2] = {1.0, 0.0};
  const double d = det(levi(psi - log_norm_weight(3.0, 2), z));
  const CriterionReport r = psh_outside_compact(psi, 3.0, 1.0L, 0.0L);
  double mod = -1.0;
  if (r.witness && !r.witness->point_is_direction) mod = std::abs(r.witness->point[0]);
  return {std::abs(d + 1.0) < 1e-8 && r.verdict == CriterionVerdict::Violated && std::abs(mod - 1.0) < 0.5,
          "det=" + fmt(d) + ", psh " + std::string(to_string(r.verdict)) + ", witness |z|=" + fmt(mod)};
}

Outcome power_sum_example() {
  const double M = 2.0;
  const WeightExpr diff = parse("abs2(z1^3+z2^3)") - log_norm_weight(M, 2);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cd z[2] = {{u(rng), u(rng)}, {u(rng), u(rng)}};
    const double r2 = std::norm(z[0]) + std::norm(z[1]);
    const double expected = -(9.0 * M / (r2 * r2)) * std::norm(std::pow(z[0], 3) + std::pow(z[1], 3));
    worst = std::max(worst, std::abs(det(levi(diff, z)) - expected) / std::abs(expected));
  }
  const QuadConfig q;
  const Verdict one = weighted_integral(WeightExpr::constant(1.0, 2), parse("abs2(z1^3+z2^3)"), q);
  const Verdict fam = exp_family_witness(3, 0.25, q);
  return {worst < 1e-8 && one.classification == Convergence::Converges &&
              fam.classification == Convergence::Converges,
          "det rel dev " + fmt(worst) + ", 1 in space: " + std::string(to_string(one.classification)) +
              ", exp family: " + std::string(to_string(fam.classification))};
}

Outcome teps_slope() {
  std::vector<double> eps;
  for (int j = 3; j <= 7; ++j) eps.push_back(std::ldexp(1.0, -j));
  const auto sweep = t_eps_sweep(PowerSum{3, 2}, eps, 1000000, 7);
  const LineFit f = t_eps_slope(sweep);
  return {std::abs(f.slope - 2.0) <= 0.3, "slope " + fmt(f.slope) + " +- " + fmt(f.slope_se)};
}

Outcome singular() {
  Outcome o{true, ""};
  for (auto [n, k] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 4}}) {
    const SingularEstimate s = singular_sphere_integral(PowerSum{k, n}, 1000000, 11);
    const double q = s.level_ratio / s.reference_ratio;
    o.pass = o.pass && s.estimate.classification == MassClass::Finite && q >= 0.5 && q <= 2.0;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("(") + std::to_string(n) + "," + std::to_string(k) +
                ") " + std::string(to_string(s.estimate.classification)) + " ratio " + fmt(s.level_ratio) +
                " vs " + fmt(s.reference_ratio);
  }
  return o;
}

Outcome lelong() {
  const cd zero[2] = {1.0, -1.0};
  const cd regular[2] = {1.0, 0.0};
  const double a = lelong_estimate(PowerSum{3, 2}, zero).value;
  const double b = lelong_estimate(PowerSum{3, 2}, regular).value;
  return {std::abs(a - 1.0) <= 0.05 && std::abs(b) <= 0.05, "nu(1,-1)=" + fmt(a) + ", nu(1,0)=" + fmt(b)};
}

Outcome radial() {
  const auto sched = default_radial_schedule();
  Outcome o{true, ""};
  const QuadConfig q;
  for (const char* text : {"t", "0.5*log(1+t)", "2.5*log(1+t)", "4*log(1+t)", "log(1+t)^1.5"}) {
    const WeightExpr phi = parse(text);
    const CriterionReport r = radial_criterion(phi, sched);
    const bool infinite = std::string(text) == "t" || std::string(text) == "log(1+t)^1.5";
    bool ok = r.verdict == (infinite ? CriterionVerdict::Satisfied : CriterionVerdict::Violated);
    std::string extra;
    if (!infinite) {
      const double a = std::stod(text);
      ok = ok && r.fitted_limit && std::abs(*r.fitted_limit - a) <= 1e-6;
      if (r.fitted_limit) extra = " limit " + fmt(*r.fitted_limit);
    }
    const DimReport d = fock_dimension(radial_weight(phi, 1), {}, infinite ? q : quad_for(std::stod(text)));
    ok = ok && (d.verdict == DimVerdict::InfiniteDim) == infinite && d.verdict != DimVerdict::Inconclusive;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string(text) + ": " + std::string(to_string(r.verdict)) +
                extra + ", dim1d " + std::string(to_string(d.verdict));
  }
  return o;
}

Outcome counterexample() {
  const CounterexampleReport c = counterexample_report();
  if (c.separable.components.size() != 2) return {false, "expected two components"};
  const DimReport& second = c.separable.components[1];
  const double dev = std::abs(second.mass_c - kPi / 3);
  return {dev <= 1e-6 && second.verdict == DimVerdict::FiniteDim && second.dim == 0 &&
              c.separable.combined.verdict == DimVerdict::ZeroDim &&
              c.monge_ampere.classification == MassClass::Infinite,
          "|mass-pi/3|=" + fmt(dev) + ", component dim " + std::to_string(second.dim) + ", combined " +
              std::string(to_string(c.separable.combined.verdict)) + ", Monge-Ampere " +
              std::string(to_string(c.monge_ampere.classification))};
}

Outcome determinism() {
  std::vector<std::string> outs;
  int code = 0;
  for (const char* threads : {"1", "8", "1", "8"}) {
    std::ostringstream out;
    std::ostringstream err;
    const std::vector<std::string> args = {"--threads", threads, "examples"};
    code = std::max(code, cli::run(args, out, err));
    outs.push_back(out.str());
  }
  const bool same = std::all_of(outs.begin(), outs.end(), [&](const std::string& s) { return s == outs[0]; });
  return {same && code == 0 && !outs[0].empty(),
          std::string(same ? "identical" : "different") + " output over 4 runs (" +
              std::to_string(outs[0].size()) + " bytes), exit " + std::to_string(code)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dimension formula", 20.0, dimension_formula},
      {2, "Riesz/membership cross-validation", 30.0, cross_validation},
      {3, "Wirtinger AD correctness", 10.0, ad_correctness},
      {4, "log^(3/2) weight criteria", 20.0, log32_example},
      {5, "|z|^2 + 2 log(1+|w|^2) example", 10.0, zw_example},
      {6, "power sum k = 3 identities and membership", 120.0, power_sum_example},
      {7, "T_eps measure slope", 60.0, teps_slope},
      {8, "singular sphere integral", 120.0, singular},
      {9, "Lelong numbers", 10.0, lelong},
      {10, "radial criterion", 10.0, radial},
      {11, "separable counterexample", 10.0, counterexample},
      {12, "determinism across thread counts", 120.0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %2d %-44s %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
