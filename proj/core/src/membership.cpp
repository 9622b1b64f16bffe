#include "fockdim/membership.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "fockdim/lowdisc.hpp"
#include "fockdim/sphere.hpp"

namespace fockdim {

namespace {

constexpr double kNegativeTolerance = 1e-10;
constexpr unsigned kMaxBisections = 15;
// Gauss-Legendre panels per shell along each ray.
constexpr int kRayPanels = 2;
constexpr int kMaxMonomialDegree = 64;
constexpr int kMaxLowerBoundDegree = 20;

using LogG = std::function<double(std::span<const std::complex<double>>)>;

Verdict from_estimate(const MeasureEstimate& est) {
  Verdict v;
  v.shell_log = est.shells;
  v.rule = est.rule;
  switch (est.classification) {
    case MassClass::Finite:
      v.classification = Convergence::Converges;
      v.value = est.value;
      v.error = est.abs_error;
      break;
    case MassClass::Infinite:
      v.classification = Convergence::Diverges;
      break;
    case MassClass::Inconclusive:
      v.classification = Convergence::Inconclusive;
      break;
  }
  return v;
}

Verdict integrate_plane(const LogG& log_g, const WeightExpr& psi, const QuadConfig& cfg) {
  const int nt = cfg.n_theta;
  if (nt < 4) throw InvalidArgument("n_theta must be at least 4");
  std::vector<std::complex<double>> unit(static_cast<std::size_t>(nt));
  for (int j = 0; j < nt; ++j)
    unit[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / nt);
  auto ring = [&](double r) {
    double s = 0.0;
    for (const auto& u : unit) {
      const std::complex<double> z[1] = {r * u};
      const double lg = log_g(z);
      if (lg == -std::numeric_limits<double>::infinity()) continue;
      s += std::exp(lg - eval(psi, z));
    }
    return r * s * (2.0 * std::numbers::pi / nt);
  };
  const MeasureEstimate est = integrate_shells(
      [&](std::size_t, double lo, double hi) {
        double error = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            ring, lo, hi, kMaxBisections, cfg.rel_tol, &error);
        return ShellValue{v, error};
      },
      cfg);
  return from_estimate(est);
}

Verdict integrate_rays(const LogG& log_g, const WeightExpr& psi, const QuadConfig& cfg) {
  const int n = psi.nvars();
  if (cfg.n_sphere < 16) throw InvalidArgument("n_sphere must be at least 16");
  const std::vector<SpherePoint> rays =
      lowdisc_sphere(n, static_cast<std::size_t>(cfg.n_sphere), cfg.seed);
  const std::size_t nrays = rays.size();
  const std::size_t nshells = shell_count(cfg);
  const double area = sphere_area(n);
  // per_ray[shell * nrays + ray]
  std::vector<double> per_ray(nshells * nrays, 0.0);

  const MeasureEstimate est = integrate_shells(
      [&](std::size_t shell, double lo, double hi) {
        std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
        double sum = 0.0;
        for (std::size_t i = 0; i < nrays; ++i) {
          const SpherePoint& zeta = rays[i];
          auto f = [&](double r) {
            for (int j = 0; j < n; ++j)
              z[static_cast<std::size_t>(j)] = r * zeta[static_cast<std::size_t>(j)];
            const double lg = log_g(z);
            if (lg == -std::numeric_limits<double>::infinity()) return 0.0;
            return std::exp(lg - eval(psi, z) + (2 * n - 1) * std::log(r));
          };
          double v = 0.0;
          const double step = (hi - lo) / kRayPanels;
          for (int p = 0; p < kRayPanels; ++p)
            v += boost::math::quadrature::gauss<double, 20>::integrate(f, lo + p * step,
                                                                        lo + (p + 1) * step);
          per_ray[shell * nrays + i] = v;
          sum += v;
        }
        return ShellValue{area * sum / static_cast<double>(nrays), 0.0};
      },
      cfg);

  Verdict v = from_estimate(est);
  const std::size_t used = est.shells.size();
  std::vector<double> totals(nrays, 0.0);
  for (std::size_t s = 0; s < used; ++s)
    for (std::size_t i = 0; i < nrays; ++i) totals[i] += per_ray[s * nrays + i];

  double mean = 0.0;
  for (double t : totals) mean += t;
  mean /= static_cast<double>(nrays);
  double var = 0.0;
  for (double t : totals) var += (t - mean) * (t - mean);
  var /= static_cast<double>(nrays - 1);
  const double std_error = area * std::sqrt(var / static_cast<double>(nrays));

  const TailIndex tail = hill_tail_index(totals);
  v.direction_tail = tail;
  v.heavy_tail = tail.index < 2.0;
  if (est.classification != MassClass::Finite) return v;

  const double tail_mass = est.value - area * mean;
  v.error = std_error + std::abs(tail_mass);
  switch (classify_mean(tail)) {
    case TailVerdict::FiniteMean:
      v.rule += "; direction tail index " + std::to_string(tail.index) + " > 1";
      break;
    case TailVerdict::InfiniteMean:
      v.classification = Convergence::Diverges;
      v.rule = "direction integrals have tail index " + std::to_string(tail.index) +
               " < 1; the sphere average diverges";
      break;
    case TailVerdict::Undecided:
      v.classification = Convergence::Inconclusive;
      v.rule = "direction tail index " + std::to_string(tail.index) + " is not separated from 1";
      break;
  }
  if (v.classification != Convergence::Converges) {
    v.value = 0.0;
    v.error = 0.0;
  }
  return v;
}

Verdict integrate(const LogG& log_g, const WeightExpr& psi, const QuadConfig& cfg) {
  if (psi.is_radial_profile()) throw TypeError("membership needs a weight on C^n, not a profile");
  return psi.nvars() == 1 ? integrate_plane(log_g, psi, cfg) : integrate_rays(log_g, psi, cfg);
}

}  // namespace

std::string_view to_string(Convergence c) {
  switch (c) {
    case Convergence::Converges: return "Converges";
    case Convergence::Diverges: return "Diverges";
    case Convergence::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict weighted_integral(const WeightExpr& g, const WeightExpr& psi, const QuadConfig& cfg) {
  if (g.is_radial_profile()) throw TypeError("g must be a function on C^n");
  if (g.nvars() > psi.nvars())
    throw InvalidArgument("g uses more variables than the weight");
  const auto gn = static_cast<std::size_t>(g.nvars());
  return integrate(
      [&](std::span<const std::complex<double>> z) {
        const double v = eval(g, z.first(gn));
        if (v < -kNegativeTolerance)
          throw NegativeIntegrand("g = " + std::to_string(v) + " is negative at a sample point");
        if (v <= 0) return -std::numeric_limits<double>::infinity();
        return std::log(v);
      },
      psi, cfg);
}

Verdict monomial_in_space(const WeightExpr& psi, std::span<const int> alpha, const QuadConfig& cfg) {
  if (alpha.size() != static_cast<std::size_t>(psi.nvars()))
    throw InvalidArgument("multi-index length must equal the number of variables");
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw InvalidArgument("multi-index entries must be non-negative");
    total += a;
  }
  if (total > kMaxMonomialDegree) throw InvalidArgument("monomial degree is capped at 64");
  std::vector<int> al(alpha.begin(), alpha.end());
  // log |z^alpha|^2 in closed form, so large |z| cannot overflow.
  return integrate(
      [al](std::span<const std::complex<double>> z) {
        double s = 0.0;
        for (std::size_t j = 0; j < al.size(); ++j) {
          if (al[j] == 0) continue;
          const double m = std::norm(z[j]);
          if (m == 0) return -std::numeric_limits<double>::infinity();
          s += al[j] * std::log(m);
        }
        return s;
      },
      psi, cfg);
}

LowerBound dimension_lower_bound(const WeightExpr& psi, int max_total_degree, const QuadConfig& cfg) {
  if (max_total_degree < 0 || max_total_degree > kMaxLowerBoundDegree)
    throw InvalidArgument("max_total_degree must be in 0..20");
  const int n = psi.nvars();
  LowerBound out;
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  // Enumerate by total degree, then lexicographically.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      alpha[static_cast<std::size_t>(pos)] = remaining;
      const Verdict v = monomial_in_space(psi, alpha, cfg);
      out.monomials.push_back({alpha, v.classification});
      if (v.classification == Convergence::Converges) ++out.count;
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      alpha[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, remaining - a);
    }
  };
  for (int d = 0; d <= max_total_degree; ++d) rec(0, d);
  return out;
}

Verdict exp_family_witness(int k, double beta, const QuadConfig& cfg) {
  if (k < 3) throw InvalidArgument("k must be at least 3");
  if (!(beta >= 0 && beta < 0.5)) throw InvalidArgument("beta must lie in [0, 1/2)");
  const std::string kk = std::to_string(k);
  const WeightExpr psi = (1.0 - 2.0 * beta) * parse("abs2(z1^" + kk + " + z2^" + kk + ")");
  return weighted_integral(WeightExpr::constant(1.0, 2), psi, cfg);
}

}  // namespace fockdim
