#include "fockdim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "fockdim/error.hpp"

namespace fockdim {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("fit_line needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("fit_line needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / (n - 2) / sxx);
  }
  return f;
}

TailIndex hill_tail_index(std::span<const double> values) {
  std::vector<double> v;
  v.reserve(values.size());
  for (double x : values)
    if (x > 0 && std::isfinite(x)) v.push_back(x);
  TailIndex t;
  if (v.size() < 16) {
    t.index = std::numeric_limits<double>::quiet_NaN();
    t.std_error = std::numeric_limits<double>::infinity();
    return t;
  }
  const auto k = std::min<std::size_t>(
      v.size() - 1, static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(static_cast<double>(v.size())))));
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end(), std::greater<>());
  const double threshold = v[k];
  double xi = 0.0;
  for (std::size_t i = 0; i < k; ++i) xi += std::log(v[i] / threshold);
  xi /= static_cast<double>(k);
  t.order_stats = k;
  if (xi <= 0) {
    t.index = std::numeric_limits<double>::infinity();
    t.std_error = 0.0;
    return t;
  }
  t.index = 1.0 / xi;
  t.std_error = t.index / std::sqrt(static_cast<double>(k));
  return t;
}

TailVerdict classify_mean(const TailIndex& t) {
  if (std::isnan(t.index)) return TailVerdict::Undecided;
  if (t.index - 2.0 * t.std_error > 1.0) return TailVerdict::FiniteMean;
  if (t.index + 2.0 * t.std_error < 1.0) return TailVerdict::InfiniteMean;
  return TailVerdict::Undecided;
}

}  // namespace fockdim
