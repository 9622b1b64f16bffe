#include <algorithm>
#include <cmath>
#include <limits>

#include "fockdim/error.hpp"
#include "fockdim/measure.hpp"

namespace fockdim {

namespace {

// The zero-tail rule is not trusted before this radius exponent.
constexpr int kZeroRuleMinExponent = 4;
// A tail estimate below this fraction of the total still counts as Finite at m_max.
constexpr double kEndTailFraction = 1e-2;
// Shells decaying like m^-p with p below this are summed as divergent at m_max.
// Strictly any p <= 1 diverges; the gap keeps 1/m-like tails Inconclusive.
constexpr double kPowerTailExponent = 0.9;

double fitted_ratio(std::span<const Shell> window) {
  // Least-squares slope of log(mass) against the shell index.
  const double k = static_cast<double>(window.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const double x = static_cast<double>(i);
    const double y = std::log(window[i].mass);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return std::exp(slope);
}

// Least-squares slope of log(mass) against log(m).
double power_exponent(std::span<const Shell> window) {
  const double k = static_cast<double>(window.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Shell& s : window) {
    const double x = std::log(static_cast<double>(s.m));
    const double y = std::log(s.mass);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

std::string_view to_string(MassClass c) {
  switch (c) {
    case MassClass::Finite: return "Finite";
    case MassClass::Infinite: return "Infinite";
    case MassClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

TailDecision classify_tail(std::span<const Shell> shells, double total, const QuadConfig& cfg,
                           bool at_end) {
  TailDecision d;
  if (shells.size() < static_cast<std::size_t>(kTailWindow)) {
    if (at_end) d.decided = true;
    d.rule = "too few shells";
    return d;
  }
  const auto window = shells.subspan(shells.size() - kTailWindow);

  const double floor = 1e-13 * std::max(1.0, std::abs(total));
  const bool all_zero =
      std::all_of(window.begin(), window.end(), [&](const Shell& s) { return std::abs(s.mass) <= floor; });
  if (all_zero && window.back().m >= kZeroRuleMinExponent) {
    d.decided = true;
    d.classification = MassClass::Finite;
    d.rule = "vanishing tail";
    return d;
  }

  bool positive = true;
  bool decreasing = true;
  bool nondecreasing = true;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!(window[i].mass > 0)) positive = false;
    if (i == 0) continue;
    const double prev = window[i - 1].mass;
    const double cur = window[i].mass;
    if (!(cur < prev)) decreasing = false;
    if (!(cur >= prev * (1.0 - 10.0 * cfg.rel_tol))) nondecreasing = false;
  }

  if (positive && decreasing) {
    const double rho = fitted_ratio(window);
    d.ratio = rho;
    if (rho < kMaxTailRatio) {
      const double tail = window.back().mass * rho / (1.0 - rho);
      if (tail <= cfg.rel_tol * std::abs(total)) {
        d.decided = true;
        d.classification = MassClass::Finite;
        d.tail = tail;
        d.rule = "geometric tail";
        return d;
      }
      if (at_end && tail <= kEndTailFraction * std::abs(total)) {
        d.decided = true;
        d.classification = MassClass::Finite;
        d.tail = tail;
        d.rule = "geometric tail at last shell";
        return d;
      }
    }
  }

  if (positive && nondecreasing && total > cfg.infinity_cutoff) {
    d.decided = true;
    d.classification = MassClass::Infinite;
    d.rule = "non-decreasing shells beyond cutoff";
    return d;
  }

  if (at_end) {
    d.decided = true;
    if (positive && nondecreasing) {
      d.classification = MassClass::Infinite;
      d.rule = "non-decreasing shells at last shell";
    } else if (positive && decreasing && window.front().m >= kZeroRuleMinExponent &&
               power_exponent(window) > -kPowerTailExponent) {
      d.classification = MassClass::Infinite;
      d.rule = "power-law tail slower than m^-0.9 at last shell";
    } else {
      d.rule = "no tail rule applies";
    }
  }
  return d;
}

std::size_t shell_count(const QuadConfig& cfg) {
  if (cfg.m_max < cfg.m_min) throw InvalidArgument("m_max must not be below m_min");
  return static_cast<std::size_t>(cfg.m_max - cfg.m_min + 2);
}

MeasureEstimate integrate_shells(
    const std::function<ShellValue(std::size_t, double, double)>& shell_fn, const QuadConfig& cfg) {
  const std::size_t count = shell_count(cfg);
  auto bounds = [&](std::size_t i) {
    Shell s;
    if (i == 0) {
      s.m = cfg.m_min - 1;
      s.r_lo = 0.0;
      s.r_hi = std::ldexp(1.0, cfg.m_min);
    } else {
      s.m = cfg.m_min + static_cast<int>(i) - 1;
      s.r_lo = std::ldexp(1.0, s.m);
      s.r_hi = std::ldexp(1.0, s.m + 1);
    }
    return s;
  };

  MeasureEstimate est;
  double total = 0.0;
  double err = 0.0;
  const std::size_t batch = std::max(1u, cfg.exec.threads);
  for (std::size_t start = 0; start < count; start += batch) {
    const std::size_t stop = std::min(count, start + batch);
    std::vector<Shell> fresh(stop - start);
    parallel_for(fresh.size(), cfg.exec, [&](std::size_t j) {
      Shell s = bounds(start + j);
      const ShellValue v = shell_fn(start + j, s.r_lo, s.r_hi);
      s.mass = v.mass;
      s.error = v.error;
      fresh[j] = s;
    });
    for (std::size_t j = 0; j < fresh.size(); ++j) {
      est.shells.push_back(fresh[j]);
      total += fresh[j].mass;
      err += fresh[j].error;
      const bool at_end = start + j + 1 == count;
      const TailDecision d = classify_tail(est.shells, total, cfg, at_end);
      if (!d.decided) continue;
      est.classification = d.classification;
      est.tail_ratio = d.ratio;
      est.rule = d.rule;
      if (d.classification == MassClass::Finite) {
        est.value = total + d.tail;
        est.abs_error = err + d.tail;
      } else {
        est.value = total;
        est.abs_error = std::numeric_limits<double>::infinity();
      }
      return est;
    }
  }
  est.value = total;
  est.abs_error = std::numeric_limits<double>::infinity();
  est.rule = "no tail rule applies";
  return est;
}

}  // namespace fockdim
