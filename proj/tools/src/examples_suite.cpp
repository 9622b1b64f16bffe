#include "fockdim_cli/examples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "fockdim/criteria.hpp"
#include "fockdim/hermitian.hpp"
#include "fockdim/membership.hpp"
#include "fockdim/philox.hpp"
#include "fockdim/riesz.hpp"
#include "fockdim/sphere.hpp"
#include "fockdim/wirtinger.hpp"

namespace fockdim::cli {

namespace {

// Reduced sample count for the singular sphere integrals.
constexpr std::size_t kSingularSamples = 200000;
constexpr std::size_t kTEpsSamples = 1000000;

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Context {
  Execution exec;
  QuadConfig quad() const {
    QuadConfig q;
    q.exec = exec;
    return q;
  }
  CriteriaConfig criteria() const {
    CriteriaConfig c;
    c.exec = exec;
    return c;
  }
};

using Runner = std::function<ExampleReport(const Context&)>;

ExampleReport log32_shigekawa(const Context& ctx) {
  ExampleReport r{"log32-shigekawa", "Violated: r^2 lambda_min stays bounded", "", false, {}};
  const auto radii = default_shigekawa_radii();
  const CriterionReport rep = shigekawa_check(parse("log(1+normsq(2))^1.5"), radii, ctx.criteria());
  const double first = rep.samples.front().statistic;
  const double last = rep.samples.back().statistic;
  r.computed = std::string(to_string(rep.verdict)) + ", s(2^4) = " + g(first) + ", s(2^14) = " + g(last);
  r.pass = rep.verdict == CriterionVerdict::Violated && last < first;
  r.detail = criterion_json(rep);
  return r;
}

ExampleReport log32_psh(const Context& ctx) {
  ExampleReport r{"log32-psh", "Satisfied for M = 1, 10, 100", "", true, Json::array()};
  const WeightExpr psi = parse("log(1+normsq(2))^1.5");
  for (double M : {1.0, 10.0, 100.0}) {
    const CriterionReport rep = psh_outside_compact_scan(psi, M, ctx.criteria());
    double log2R = 0.0;
    for (const auto& [k, v] : rep.parameters)
      if (k == "log2_R") log2R = v;
    if (!r.computed.empty()) r.computed += "; ";
    r.computed += "M=" + g(M) + ": " + std::string(to_string(rep.verdict)) + " (log2 R = " + g(log2R) + ")";
    r.pass = r.pass && rep.verdict == CriterionVerdict::Satisfied;
    r.detail.push_back(criterion_json(rep));
  }
  return r;
}

const char* const kZw = "abs2(z1)+2*log(1+abs2(z2))";

ExampleReport zw_det(const Context&) {
  ExampleReport r{"zw-levi-det", "det L(psi - 3 log|z|^2) at (1, 0) = -1", "", false, {}};
  const WeightExpr diff = parse(kZw) - log_norm_weight(3.0, 2);
  const std::complex<double> z[2] = {1.0, 0.0};
  const double d = det(levi(diff, z));
  r.computed = "det = " + g(d);
  r.pass = std::abs(d + 1.0) < 1e-8;
  r.detail = {{"det", number(d)}};
  return r;
}

ExampleReport zw_psh(const Context& ctx) {
  ExampleReport r{"zw-psh", "Violated for M = 3 with a witness at |z| = 1", "", false, {}};
  const CriterionReport rep = psh_outside_compact(parse(kZw), 3.0, 1.0L, 0.0L, ctx.criteria());
  r.computed = std::string(to_string(rep.verdict));
  if (rep.witness) {
    const double mod = std::abs(rep.witness->point[0]);
    r.computed += ", witness |z| = " + g(mod);
    r.pass = rep.verdict == CriterionVerdict::Violated && std::abs(mod - 1.0) < 0.5;
  }
  r.detail = criterion_json(rep);
  return r;
}

ExampleReport power_sum_det(const Context&) {
  ExampleReport r{"power-sum-det-identity",
                  "det L(|P|^2 - M log|z|^2) = -(k^2 M / |z|^4) |P|^2 for P = z1^3 + z2^3", "", false,
                  {}};
  const int k = 3;
  const double M = 2.0;
  const WeightExpr diff = parse("abs2(z1^3+z2^3)") - log_norm_weight(M, 2);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto u = Philox4x32::at(2024, i, 0, 0);
    const auto v = Philox4x32::at(2024, i, 1, 0);
    const std::complex<double> z[2] = {
        {4.0 * uniform_open(u[0], u[1]) - 2.0, 4.0 * uniform_open(u[2], u[3]) - 2.0},
        {4.0 * uniform_open(v[0], v[1]) - 2.0, 4.0 * uniform_open(v[2], v[3]) - 2.0}};
    const double r2 = std::norm(z[0]) + std::norm(z[1]);
    const double p2 = std::norm(std::pow(z[0], 3) + std::pow(z[1], 3));
    const double expected = -(k * k * M / (r2 * r2)) * p2;
    const double got = det(levi(diff, z));
    worst = std::max(worst, std::abs(got - expected) / std::max(std::abs(expected), 1e-300));
  }
  r.computed = "max relative deviation over 100 points = " + g(worst);
  r.pass = worst < 1e-8;
  r.detail = {{"max_rel_dev", number(worst)}};
  return r;
}

ExampleReport power_sum_unit(const Context& ctx) {
  ExampleReport r{"power-sum-unit-in-space", "1 is square integrable for |z1^3 + z2^3|^2: Converges",
                  "", false, {}};
  const Verdict v = weighted_integral(WeightExpr::constant(1.0, 2), parse("abs2(z1^3+z2^3)"), ctx.quad());
  r.computed = std::string(to_string(v.classification));
  r.pass = v.classification == Convergence::Converges;
  r.detail = {{"classification", r.computed},
              {"value", v.classification == Convergence::Converges ? number(v.value) : Json(nullptr)}};
  return r;
}

ExampleReport exp_family(const Context& ctx) {
  ExampleReport r{"exp-family-k3", "k = 3, beta = 0.25: Converges", "", false, {}};
  const Verdict v = exp_family_witness(3, 0.25, ctx.quad());
  r.computed = std::string(to_string(v.classification));
  r.pass = v.classification == Convergence::Converges;
  r.detail = {{"classification", r.computed}};
  return r;
}

ExampleReport power_sum_k2(const Context& ctx) {
  ExampleReport r{"power-sum-k2-unit", "1 is not certified for |z1^2 + z2^2|^2: not Converges", "",
                  false, {}};
  const Verdict v = weighted_integral(WeightExpr::constant(1.0, 2), parse("abs2(z1^2+z2^2)"), ctx.quad());
  r.computed = std::string(to_string(v.classification));
  r.pass = v.classification != Convergence::Converges;
  r.detail = {{"classification", r.computed}};
  return r;
}

ExampleReport teps_slope(const Context& ctx) {
  ExampleReport r{"power-sum-teps-slope", "sigma(T_eps) ~ eps^2: slope 2.0 +- 0.3", "", false, {}};
  std::vector<double> eps;
  for (int j = 3; j <= 7; ++j) eps.push_back(std::ldexp(1.0, -j));
  const auto sweep = t_eps_sweep(PowerSum{3, 2}, eps, kTEpsSamples, 7, ctx.exec);
  const LineFit fit = t_eps_slope(sweep);
  r.computed = "slope = " + g(fit.slope);
  r.pass = std::abs(fit.slope - 2.0) <= 0.3;
  Json rows = Json::array();
  for (const auto& t : sweep) rows.push_back(teps_json(t));
  r.detail = {{"slope", number(fit.slope)}, {"sweep", std::move(rows)}};
  return r;
}

ExampleReport singular(const Context& ctx) {
  ExampleReport r{"power-sum-singular",
                  "Finite for (n, k) = (2, 3), (2, 4), (3, 4) with level ratio within 2x of 2^(-2(1-2/k))",
                  "", true, Json::array()};
  for (auto [n, k] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 4}}) {
    const SingularEstimate s = singular_sphere_integral(PowerSum{k, n}, kSingularSamples, 11, ctx.exec);
    const double q = s.level_ratio / s.reference_ratio;
    const bool ok = s.estimate.classification == MassClass::Finite && q <= 2.0 && q >= 0.5;
    if (!r.computed.empty()) r.computed += "; ";
    r.computed += "(" + std::to_string(n) + "," + std::to_string(k) + "): " +
                  std::string(to_string(s.estimate.classification)) + ", ratio " + g(s.level_ratio);
    r.pass = r.pass && ok;
    Json d = singular_json(s);
    d["n"] = n;
    d["k"] = k;
    r.detail.push_back(std::move(d));
  }
  return r;
}

ExampleReport singular_k2(const Context& ctx) {
  ExampleReport r{"power-sum-singular-k2", "k = 2: level sums do not decay, not Finite", "", false, {}};
  const SingularEstimate s = singular_sphere_integral(PowerSum{2, 2}, kSingularSamples, 11, ctx.exec);
  r.computed = std::string(to_string(s.estimate.classification)) + ", ratio " + g(s.level_ratio);
  r.pass = s.estimate.classification != MassClass::Finite;
  r.detail = singular_json(s);
  return r;
}

ExampleReport lelong(const Context&) {
  ExampleReport r{"power-sum-lelong", "nu = 1 at (1, -1), nu = 0 at (1, 0)", "", false, {}};
  const std::complex<double> zero[2] = {1.0, -1.0};
  const std::complex<double> regular[2] = {1.0, 0.0};
  const LelongEstimate a = lelong_estimate(PowerSum{3, 2}, zero);
  const LelongEstimate b = lelong_estimate(PowerSum{3, 2}, regular);
  r.computed = "nu(1,-1) = " + g(a.value) + ", nu(1,0) = " + g(b.value);
  r.pass = std::abs(a.value - 1.0) <= 0.05 && std::abs(b.value) <= 0.05;
  r.detail = {{"zero", lelong_json(a)}, {"regular", lelong_json(b)}};
  return r;
}

ExampleReport radial(const Context& ctx) {
  ExampleReport r{"radial-criterion",
                  "t: Satisfied; 2.5 log(1+t): Violated with limit 2.5; log(1+t)^1.5: Satisfied", "",
                  false, Json::array()};
  const auto schedule = default_radial_schedule();
  const CriterionReport a = radial_criterion(parse("t"), schedule, ctx.criteria());
  const CriterionReport b = radial_criterion(parse("2.5*log(1+t)"), schedule, ctx.criteria());
  const CriterionReport c = radial_criterion(parse("log(1+t)^1.5"), schedule, ctx.criteria());
  r.computed = std::string(to_string(a.verdict)) + "; " + std::string(to_string(b.verdict)) +
               (b.fitted_limit ? " (limit " + g(*b.fitted_limit) + ")" : "") + "; " +
               std::string(to_string(c.verdict));
  r.pass = a.verdict == CriterionVerdict::Satisfied && b.verdict == CriterionVerdict::Violated &&
           b.fitted_limit && std::abs(*b.fitted_limit - 2.5) <= 1e-6 &&
           c.verdict == CriterionVerdict::Satisfied;
  for (const auto* rep : {&a, &b, &c}) r.detail.push_back(criterion_json(*rep));
  return r;
}

ExampleReport dim1d(const Context& ctx) {
  ExampleReport r{"dim1d-log", "a log(1+|z|^2), a = 0.5, 1.5, 2.5, 4: dim 0, 1, 2, 3", "", true,
                  Json::array()};
  const double as[] = {0.5, 1.5, 2.5, 4.0};
  const long long dims[] = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    QuadConfig q = ctx.quad();
    // 4 log(1+|z|^2) has mass exactly 16 pi, on the lattice.
    q.exact = as[i] == 4.0;
    const DimReport d = fock_dimension(parse(g(as[i]) + "*log(1+abs2(z))"), {}, q);
    const bool finite = d.verdict == DimVerdict::FiniteDim || d.verdict == DimVerdict::ZeroDim;
    if (!r.computed.empty()) r.computed += ", ";
    r.computed += finite ? std::to_string(d.dim) : std::string(to_string(d.verdict));
    r.pass = r.pass && finite && d.dim == dims[i] &&
             std::abs(d.mass_c - 4.0 * std::numbers::pi * as[i]) < 1e-5;
    r.detail.push_back(dim_json(d));
  }
  return r;
}

ExampleReport counterexample(const Context& ctx) {
  ExampleReport r{"counterexample", "dimension 0 while the Monge-Ampere mass is infinite", "", false, {}};
  const CounterexampleReport c = counterexample_report(ctx.quad());
  r.computed = std::string(to_string(c.separable.combined.verdict)) + ", Monge-Ampere mass " +
               std::string(to_string(c.monge_ampere.classification));
  double mass2 = 0.0;
  if (c.separable.components.size() == 2) mass2 = c.separable.components[1].mass_c;
  r.pass = c.separable.combined.verdict == DimVerdict::ZeroDim &&
           c.monge_ampere.classification == MassClass::Infinite && c.contradiction &&
           std::abs(mass2 - std::numbers::pi / 3.0) <= 1e-6;
  r.detail = counterexample_json(c);
  return r;
}

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> all = {
      {"log32-shigekawa", log32_shigekawa},
      {"log32-psh", log32_psh},
      {"zw-levi-det", zw_det},
      {"zw-psh", zw_psh},
      {"power-sum-det-identity", power_sum_det},
      {"power-sum-unit-in-space", power_sum_unit},
      {"exp-family-k3", exp_family},
      {"power-sum-k2-unit", power_sum_k2},
      {"power-sum-teps-slope", teps_slope},
      {"power-sum-singular", singular},
      {"power-sum-singular-k2", singular_k2},
      {"power-sum-lelong", lelong},
      {"radial-criterion", radial},
      {"dim1d-log", dim1d},
      {"counterexample", counterexample},
  };
  return all;
}

}  // namespace

std::vector<std::string> example_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : registry()) ids.push_back(id);
  return ids;
}

std::vector<ExampleReport> examples_suite(const std::vector<std::string>& only, Execution exec) {
  for (const auto& id : only) {
    const auto& reg = registry();
    if (std::none_of(reg.begin(), reg.end(), [&](const auto& e) { return e.first == id; }))
      throw InvalidArgument("unknown example '" + id + "'");
  }
  const Context ctx{exec};
  std::vector<ExampleReport> out;
  for (const auto& [id, fn] : registry()) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    try {
      out.push_back(fn(ctx));
    } catch (const std::exception& e) {
      ExampleReport r;
      r.id = id;
      r.computed = std::string("error: ") + e.what();
      r.detail = Json::object();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace fockdim::cli
