#pragma once

#include <cstddef>
#include <span>

namespace fockdim {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Standard error of the slope (0 for two points).
  double slope_se = 0.0;
};

/// Ordinary least squares y = intercept + slope x. Needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct TailIndex {
  /// Hill estimate of the Pareto index; +infinity for a flat upper tail.
  double index = 0.0;
  double std_error = 0.0;
  std::size_t order_stats = 0;
};

/// Hill estimator over the ceil(4 sqrt(N)) largest positive values.
TailIndex hill_tail_index(std::span<const double> values);

enum class TailVerdict { FiniteMean, InfiniteMean, Undecided };

/// FiniteMean when index - 2 se > 1, InfiniteMean when index + 2 se < 1.
TailVerdict classify_mean(const TailIndex& t);

}  // namespace fockdim
