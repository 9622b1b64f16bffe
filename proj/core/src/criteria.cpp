#include "fockdim/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockdim/hermitian.hpp"
#include "fockdim/lowdisc.hpp"
#include "fockdim/stats.hpp"
#include "fockdim/wirtinger.hpp"

namespace fockdim {

namespace {

constexpr int kMinShigekawaDirs = 8;
constexpr int kMinPshDirs = 32;
constexpr std::size_t kRadialWindow = 5;
constexpr int kBisectionSteps = 16;
// Relative size of eigenvalue round-off in the normalized Levi matrix.
constexpr double kRoundoffTol = 1e-14;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

Sample make_sample(const SpherePoint& zeta, long double r, double statistic) {
  Sample s;
  s.radius = static_cast<double>(r);
  s.log2_radius = static_cast<double>(std::log2(r));
  s.statistic = statistic;
  if (r < 1e300L) {
    for (const auto& c : zeta) s.point.push_back(static_cast<double>(r) * c);
  } else {
    s.point = zeta;
    s.point_is_direction = true;
  }
  return s;
}

}  // namespace

std::string_view to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::Satisfied: return "Satisfied";
    case CriterionVerdict::Violated: return "Violated";
    case CriterionVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<double> default_shigekawa_radii() {
  std::vector<double> r;
  for (int j = 4; j <= 14; ++j) r.push_back(std::ldexp(1.0, j));
  return r;
}

std::vector<double> default_radial_schedule() {
  std::vector<double> r;
  for (int j = 1; j <= 64; ++j) r.push_back(std::ldexp(1.0, j));
  return r;
}

CriterionReport shigekawa_check(const WeightExpr& psi, std::span<const double> radii,
                                const CriteriaConfig& cfg) {
  if (psi.is_radial_profile()) throw TypeError("shigekawa_check needs a weight on C^n");
  if (radii.size() < 3) throw InvalidArgument("shigekawa_check needs at least three radii");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw InvalidArgument("radii must be positive and increasing");
  if (cfg.n_dirs < kMinShigekawaDirs) throw InvalidArgument("n_dirs must be at least 8");

  const int n = psi.nvars();
  const auto dirs = direction_set(n, static_cast<std::size_t>(cfg.n_dirs));
  CriterionReport rep;
  rep.criterion = "shigekawa";
  rep.parameters = {{"n_dirs", cfg.n_dirs},
                    {"r_min", radii.front()},
                    {"r_max", radii.back()},
                    {"growth_threshold", cfg.growth_threshold}};

  std::vector<double> stat(dirs.size());
  for (double r : radii) {
    parallel_for(dirs.size(), cfg.exec, [&](std::size_t d) {
      std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = r * dirs[d][static_cast<std::size_t>(j)];
      stat[d] = r * r * min_eigenvalue(levi(psi, z));
    });
    const auto best = static_cast<std::size_t>(std::min_element(stat.begin(), stat.end()) - stat.begin());
    rep.samples.push_back(make_sample(dirs[best], r, stat[best]));
  }

  const Sample& last = rep.samples.back();
  if (!(last.statistic > 0)) {
    rep.verdict = CriterionVerdict::Violated;
    rep.witness = last;
    rep.notes.push_back("r^2 lambda_min is not positive at the largest radius");
    return rep;
  }
  std::vector<double> x, y;
  for (const Sample& s : rep.samples) {
    if (!(s.statistic > 0)) continue;
    x.push_back(std::log(s.radius));
    y.push_back(std::log(s.statistic));
  }
  const LineFit fit = fit_line(x, y);
  rep.parameters.emplace_back("slope", fit.slope);
  if (fit.slope > cfg.slope_threshold && last.statistic > cfg.growth_threshold) {
    rep.verdict = CriterionVerdict::Satisfied;
    rep.notes.push_back("s(r) grows with log-log slope " + fmt(fit.slope) +
                        "; sampling suggests but does not prove |z|^2 lambda_0 -> infinity");
  } else if (fit.slope <= cfg.slope_threshold) {
    rep.verdict = CriterionVerdict::Violated;
    rep.witness = last;
    rep.notes.push_back("s(r) is bounded or decreasing (log-log slope " + fmt(fit.slope) + ")");
  } else {
    rep.notes.push_back("s(r) grows but stays below the growth threshold");
  }
  return rep;
}

CriterionReport psh_outside_compact(const WeightExpr& psi, double M, long double R,
                                    long double r_max, const CriteriaConfig& cfg) {
  if (psi.is_radial_profile()) throw TypeError("psh_outside_compact needs a weight on C^n");
  if (!(M >= 0)) throw InvalidArgument("M must be non-negative");
  if (!(R >= 1)) throw InvalidArgument("R must be at least 1");
  if (cfg.n_dirs < kMinPshDirs) throw InvalidArgument("n_dirs must be at least 32");
  if (!(r_max > 0)) r_max = R * std::exp2l(cfg.r_max_octaves);
  if (!(r_max >= R)) throw InvalidArgument("r_max must be at least R");

  const int n = psi.nvars();
  const WeightExpr diff = M == 0 ? psi : psi - log_norm_weight(M, n);
  const auto dirs = direction_set(n, static_cast<std::size_t>(cfg.n_dirs));

  CriterionReport rep;
  rep.criterion = "psh";
  rep.parameters = {{"M", M},
                    {"log2_R", static_cast<double>(std::log2(R))},
                    {"log2_r_max", static_cast<double>(std::log2(r_max))},
                    {"n_dirs", cfg.n_dirs}};

  struct Eval {
    double normalized = 0.0;  // lambda_min / scale
    long double value = 0.0;  // lambda_min
    bool violated = false;
    bool marginal = false;
    bool finite = true;
  };
  std::vector<Eval> evals(dirs.size());
  long double worst_value = std::numeric_limits<long double>::infinity();

  std::optional<Sample> marginal;
  const int steps = static_cast<int>(std::floor(2.0L * std::log2(r_max / R) + 1e-9L));
  for (int i = 0; i <= steps; ++i) {
    const long double r = R * std::exp2l(0.5L * i);
    parallel_for(dirs.size(), cfg.exec, [&](std::size_t d) {
      std::vector<std::complex<long double>> z(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        const auto c = dirs[d][static_cast<std::size_t>(j)];
        z[static_cast<std::size_t>(j)] = {r * c.real(), r * c.imag()};
      }
      const ScaledLevi L = levi_scaled(diff, z);
      Eval e;
      if (!std::isfinite(L.scale)) {
        e.finite = false;
      } else if (L.scale > 0) {
        e.normalized = min_eigenvalue(L.matrix);
        e.value = static_cast<long double>(e.normalized) * L.scale;
        e.finite = std::isfinite(e.normalized);
        const double size = 1.0 + L.matrix.norm_inf();
        e.violated = e.normalized < -cfg.psd_rel_tol * size;
        // The M log|z|^2 part must stay above the round-off of the psi part.
        const bool unresolved =
            M > 0 && M / (r * r) < kRoundoffTol * L.scale * static_cast<long double>(size);
        e.marginal = !e.violated && (unresolved || e.normalized < -kRoundoffTol * size);
      }
      evals[d] = e;
    });

    std::size_t arg = 0;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      if (!evals[d].finite) {
        rep.verdict = CriterionVerdict::Inconclusive;
        rep.notes.push_back("non-finite Levi matrix at log2|z| = " +
                            fmt(static_cast<double>(std::log2(r))));
        return rep;
      }
      if (evals[d].value < evals[arg].value) arg = d;
      if (evals[d].violated && !rep.witness)
        rep.witness = make_sample(dirs[d], r, static_cast<double>(evals[d].value));
      if (evals[d].marginal && !marginal)
        marginal = make_sample(dirs[d], r, static_cast<double>(evals[d].value));
    }
    rep.samples.push_back(make_sample(dirs[arg], r, static_cast<double>(evals[arg].value)));
    if (evals[arg].value < worst_value) {
      worst_value = evals[arg].value;
      rep.worst = rep.samples.back();
    }
  }

  if (rep.witness) {
    rep.verdict = CriterionVerdict::Violated;
    rep.notes.push_back("psi - M log|z|^2 is not plurisubharmonic at the witness");
  } else if (marginal) {
    rep.verdict = CriterionVerdict::Inconclusive;
    rep.worst = marginal;
    rep.notes.push_back(
        "the M log|z|^2 term or a negative Levi eigenvalue is below numerical resolution at the "
        "reported sample");
  } else {
    rep.verdict = CriterionVerdict::Satisfied;
    rep.notes.push_back(
        "L(psi - M log|z|^2) is positive semidefinite at every sample; sampling cannot prove it");
    rep.notes.push_back("if this holds for every M > 0, the space is infinite-dimensional");
  }
  return rep;
}

CriterionReport psh_outside_compact_scan(const WeightExpr& psi, double M, const CriteriaConfig& cfg) {
  auto at = [&](double log2R) {
    return psh_outside_compact(psi, M, std::exp2l(log2R), 0.0L, cfg);
  };
  int trials = 0;
  std::optional<CriterionReport> innermost_violation;
  double failing = -1.0;
  double passing = -1.0;
  std::optional<CriterionReport> found;
  for (double L = 0.0;;) {
    CriterionReport rep = at(L);
    ++trials;
    if (rep.verdict == CriterionVerdict::Satisfied) {
      passing = L;
      found = std::move(rep);
      break;
    }
    if (rep.verdict == CriterionVerdict::Inconclusive && !rep.worst) {
      // Non-finite evaluation: larger R cannot help.
      if (innermost_violation) {
        CriterionReport v = std::move(*innermost_violation);
        v.notes.push_back("R scan stopped at log2 R = " + fmt(L) +
                          " (non-finite Levi matrix) without a clean pass");
        v.parameters.emplace_back("scan_trials", trials);
        return v;
      }
      rep.notes.push_back("R scan stopped at log2 R = " + fmt(L));
      return rep;
    }
    if (rep.verdict == CriterionVerdict::Violated && !innermost_violation) innermost_violation = rep;
    failing = L;
    if (L >= cfg.max_log2_R) break;
    L = std::min(cfg.max_log2_R, L == 0.0 ? 1.0 : 2.0 * L);
  }

  if (!found) {
    if (innermost_violation) {
      CriterionReport rep = std::move(*innermost_violation);
      rep.notes.push_back("no scanned R up to 2^" + fmt(cfg.max_log2_R) +
                          " is free of violations or unresolved negative eigenvalues");
      rep.parameters.emplace_back("scan_trials", trials);
      return rep;
    }
    CriterionReport rep = at(failing);
    rep.notes.push_back("no scanned R gave a clean pass");
    rep.parameters.emplace_back("scan_trials", trials);
    return rep;
  }

  // Bisection on log2 R between the last failing and the first passing exponent.
  for (int step = 0; step < kBisectionSteps && failing >= 0 && passing - failing > 1.0; ++step) {
    const double mid = std::floor(0.5 * (failing + passing));
    CriterionReport rep = at(mid);
    ++trials;
    if (rep.verdict == CriterionVerdict::Satisfied) {
      passing = mid;
      found = std::move(rep);
    } else if (rep.verdict == CriterionVerdict::Inconclusive && !rep.worst) {
      break;
    } else {
      failing = mid;
    }
  }
  CriterionReport rep = std::move(*found);
  rep.notes.push_back("R found by scan: log2 R = " + fmt(passing));
  rep.parameters.emplace_back("scan_trials", trials);
  return rep;
}

CriterionReport radial_criterion(const WeightExpr& phi, std::span<const double> schedule,
                                 const CriteriaConfig& cfg) {
  if (schedule.size() < kRadialWindow + 1)
    throw InvalidArgument("radial schedule needs at least six points");
  for (std::size_t i = 0; i < schedule.size(); ++i)
    if (!(schedule[i] > 0) || (i > 0 && !(schedule[i] > schedule[i - 1])))
      throw InvalidArgument("radial schedule must be positive and increasing");

  CriterionReport rep;
  rep.criterion = "radial";
  rep.parameters = {{"r_min", schedule.front()},
                    {"r_max", schedule.back()},
                    {"growth_threshold", cfg.growth_threshold}};

  std::vector<double> s;
  for (double r : schedule) {
    const RJet2 j = radial_jet(phi, r);
    const double radial = j.d1 + r * j.d2;
    const double tol = 1e-12 * (std::abs(j.d1) + std::abs(r * j.d2));
    if (j.d1 < -tol || radial < -tol) {
      Sample bad;
      bad.point = {r};
      bad.radius = r;
      bad.log2_radius = std::log2(r);
      bad.statistic = std::min(j.d1, radial);
      rep.verdict = CriterionVerdict::Inconclusive;
      rep.worst = bad;
      rep.notes.push_back("phi(|z|^2) is not plurisubharmonic at t = " + fmt(r) +
                          " (phi' = " + fmt(j.d1) + ", phi' + t phi'' = " + fmt(radial) + ")");
      return rep;
    }
    Sample smp;
    smp.point = {r};
    smp.radius = r;
    smp.log2_radius = std::log2(r);
    smp.statistic = r * j.d1;
    rep.samples.push_back(smp);
    s.push_back(r * j.d1);
  }

  const std::size_t m = s.size();
  std::vector<double> d;
  for (std::size_t i = m - kRadialWindow; i < m; ++i) d.push_back(s[i] - s[i - 1]);
  const double s_last = s.back();

  const bool flat = std::all_of(d.begin(), d.end(), [&](double x) {
    return std::abs(x) <= 1e-14 * std::max(1.0, std::abs(s_last));
  });
  bool geometric = false;
  double rho = 0.0;
  if (!flat) {
    const bool same_sign = std::all_of(d.begin(), d.end(), [&](double x) { return x > 0; }) ||
                           std::all_of(d.begin(), d.end(), [&](double x) { return x < 0; });
    bool shrinking = same_sign;
    for (std::size_t i = 1; i < d.size() && shrinking; ++i)
      shrinking = std::abs(d[i]) < std::abs(d[i - 1]);
    if (shrinking) {
      std::vector<double> x, y;
      for (std::size_t i = 0; i < d.size(); ++i) {
        x.push_back(static_cast<double>(i));
        y.push_back(std::log(std::abs(d[i])));
      }
      rho = std::exp(fit_line(x, y).slope);
      geometric = rho < kMaxTailRatio;
    }
  }
  if (flat || geometric) {
    const double tail = geometric ? d.back() * rho / (1.0 - rho) : 0.0;
    rep.verdict = CriterionVerdict::Violated;
    rep.fitted_limit = s_last + tail;
    rep.witness = rep.samples.back();
    rep.parameters.emplace_back("limit_error", std::abs(tail) + std::abs(d.back()));
    rep.notes.push_back("r phi'(r) has a finite limit " + fmt(*rep.fitted_limit) +
                        "; the Monge-Ampere mass is finite, so the space is finite-dimensional");
    return rep;
  }

  bool divergent = s_last > cfg.growth_threshold;
  if (!divergent && s_last > 0 && s[m - kRadialWindow] > 0) {
    std::vector<double> lx, llx, y;
    for (std::size_t i = m - kRadialWindow; i < m; ++i) {
      if (!(s[i] > 0) || !(schedule[i] > 1)) continue;
      lx.push_back(std::log(schedule[i]));
      llx.push_back(std::log(std::log(schedule[i])));
      y.push_back(std::log(s[i]));
    }
    if (y.size() >= 3) {
      const double power = fit_line(lx, y).slope;
      const double loglog = fit_line(llx, y).slope;
      rep.parameters.emplace_back("power_slope", power);
      rep.parameters.emplace_back("loglog_slope", loglog);
      divergent = power > cfg.slope_threshold || loglog > cfg.slope_threshold;
    }
  }
  if (divergent) {
    rep.verdict = CriterionVerdict::Satisfied;
    rep.notes.push_back("r phi'(r) diverges; the Monge-Ampere mass is infinite, so the space is "
                        "infinite-dimensional");
  } else {
    rep.notes.push_back("r phi'(r) neither settles nor grows on the schedule");
  }
  return rep;
}

MeasureEstimate monge_ampere_mass(const WeightExpr& phi, int n, std::span<const double> schedule,
                                  const CriteriaConfig& cfg) {
  if (n < 1 || n > 16) throw InvalidArgument("n must be in 1..16");
  const CriterionReport rep = radial_criterion(phi, schedule, cfg);
  MeasureEstimate est;
  est.rule = "limit of (r phi'(r))^n";
  switch (rep.verdict) {
    case CriterionVerdict::Satisfied:
      est.classification = MassClass::Infinite;
      est.value = std::numeric_limits<double>::infinity();
      est.abs_error = std::numeric_limits<double>::infinity();
      break;
    case CriterionVerdict::Violated: {
      const double L = *rep.fitted_limit;
      double err = 0.0;
      for (const auto& [k, v] : rep.parameters)
        if (k == "limit_error") err = v;
      est.classification = MassClass::Finite;
      est.value = std::pow(L, n);
      est.abs_error = n * std::pow(std::abs(L), n - 1) * err;
      break;
    }
    case CriterionVerdict::Inconclusive:
      est.classification = MassClass::Inconclusive;
      est.abs_error = std::numeric_limits<double>::infinity();
      break;
  }
  return est;
}

SeparableReport separable_dimension(std::span<const SeparableComponent> components,
                                    const QuadConfig& cfg) {
  if (components.empty()) throw InvalidArgument("separable_dimension needs at least one component");
  SeparableReport out;
  for (const auto& c : components) {
    if (c.expr) {
      out.components.push_back(fock_dimension(*c.expr, c.atoms, cfg));
    } else if (c.density) {
      out.components.push_back(fock_dimension(c.density, c.atoms, cfg));
    } else {
      throw InvalidArgument("component '" + c.label + "' has neither a weight nor a density");
    }
  }
  auto is_zero = [](const DimReport& r) {
    return r.verdict == DimVerdict::ZeroDim || (r.verdict == DimVerdict::FiniteDim && r.dim == 0);
  };
  DimReport& comb = out.combined;
  const auto& comps = out.components;
  if (std::any_of(comps.begin(), comps.end(), is_zero)) {
    comb.verdict = DimVerdict::ZeroDim;
    comb.evidence.push_back("a component space is {0}, so the product space is {0}");
  } else if (std::any_of(comps.begin(), comps.end(),
                         [](const DimReport& r) { return r.verdict == DimVerdict::Inconclusive; })) {
    comb.verdict = DimVerdict::Inconclusive;
    comb.evidence.push_back("a component dimension is inconclusive");
  } else if (std::all_of(comps.begin(), comps.end(),
                         [](const DimReport& r) { return r.verdict == DimVerdict::FiniteDim; })) {
    comb.verdict = DimVerdict::FiniteDim;
    comb.dim = 1;
    for (const auto& r : comps) comb.dim *= r.dim;
    comb.evidence.push_back("every component is finite-dimensional and nonzero");
    comb.evidence.push_back(
        "value is the product of component dimensions (derived from the tensor-product "
        "structure, not a stated result)");
  } else {
    comb.verdict = DimVerdict::InfiniteDim;
    comb.evidence.push_back("a component is infinite-dimensional and none is {0}");
  }
  return out;
}

CounterexampleReport counterexample_report(const QuadConfig& cfg) {
  std::vector<SeparableComponent> comps(2);
  comps[0].label = "psi_1 = |z|^2";
  comps[0].expr = parse("abs2(z1)");
  comps[1].label = "Delta psi_2 = max(1 - |z|, 0)";
  comps[1].density = [](std::complex<double> z) { return std::max(1.0 - std::abs(z), 0.0); };

  CounterexampleReport out;
  out.separable = separable_dimension(comps, cfg);
  const auto& c = out.separable.components;
  MeasureEstimate& ma = out.monge_ampere;
  ma.rule = "product of component Riesz masses";
  const bool any_infinite = std::any_of(c.begin(), c.end(), [](const DimReport& r) {
    return r.mass_continuous.classification == MassClass::Infinite;
  });
  const bool all_finite = std::all_of(c.begin(), c.end(), [](const DimReport& r) {
    return r.mass_continuous.classification == MassClass::Finite;
  });
  if (any_infinite) {
    ma.classification = MassClass::Infinite;
    ma.value = std::numeric_limits<double>::infinity();
    ma.abs_error = std::numeric_limits<double>::infinity();
  } else if (all_finite) {
    ma.classification = MassClass::Finite;
    ma.value = 1.0;
    for (const auto& r : c) ma.value *= r.mass_continuous.value;
  } else {
    ma.abs_error = std::numeric_limits<double>::infinity();
  }
  out.contradiction = ma.classification == MassClass::Infinite &&
                      out.separable.combined.verdict == DimVerdict::ZeroDim;
  out.notes.push_back("component 2 Riesz mass = " + fmt(c[1].mass_continuous.value) +
                      " (pi/3 = " + fmt(std::numbers::pi / 3) + ")");
  if (out.contradiction)
    out.notes.push_back("Monge-Ampere mass is infinite yet the space is {0}: the radial criterion "
                        "does not extend to non-radial weights");
  return out;
}

}  // namespace fockdim
