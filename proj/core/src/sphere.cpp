#include "fockdim/sphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fockdim/error.hpp"

namespace fockdim {

namespace {

// Samples per reduction chunk. Fixed so sums do not depend on the worker count.
constexpr std::size_t kChunk = 4096;
constexpr int kMaxLevel = 64;
constexpr std::size_t kMinLevelCount = 30;
constexpr int kFirstFittedLevel = 2;
constexpr int kDegenerateRetries = 8;

std::size_t chunk_count(std::size_t count) { return (count + kChunk - 1) / kChunk; }

void check_power_sum(const PowerSum& p) {
  if (p.k < 2) throw InvalidArgument("power sum degree k must be at least 2");
  if (p.n < 1 || p.n > 16) throw InvalidArgument("power sum dimension n must be in 1..16");
}

void fill_sample(int n, std::uint64_t index, std::uint64_t seed, std::uint32_t stream,
                 std::complex<double>* out) {
  double norm2 = 0.0;
  for (int b = 0; b < n; ++b) {
    const auto g = gaussian_pair(Philox4x32::at(seed, index, static_cast<std::uint32_t>(b), stream));
    out[b] = {g[0], g[1]};
    norm2 += g[0] * g[0] + g[1] * g[1];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (int b = 0; b < n; ++b) out[b] *= inv;
}

}  // namespace

double sphere_area(int n) {
  if (n < 1) throw InvalidArgument("sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, n) / std::tgamma(static_cast<double>(n));
}

SpherePoint sphere_sample(int n, std::uint64_t index, std::uint64_t seed, std::uint32_t stream) {
  if (n < 1 || n > 16) throw InvalidArgument("sphere dimension must be in 1..16");
  SpherePoint p(static_cast<std::size_t>(n));
  fill_sample(n, index, seed, stream, p.data());
  return p;
}

std::vector<SpherePoint> sample_sphere(int n, std::size_t count, std::uint64_t seed) {
  std::vector<SpherePoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sphere_sample(n, i, seed));
  return out;
}

std::complex<double> PowerSum::operator()(std::span<const std::complex<double>> z) const {
  std::complex<double> s = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::complex<double> x = z[static_cast<std::size_t>(j)];
    std::complex<double> pw = x;
    for (int e = 1; e < k; ++e) pw *= x;
    s += pw;
  }
  return s;
}

std::vector<TEpsEstimate> t_eps_sweep(const PowerSum& p, std::span<const double> eps,
                                      std::size_t count, std::uint64_t seed, Execution exec) {
  check_power_sum(p);
  if (count == 0) throw InvalidArgument("sample count must be positive");
  for (double e : eps)
    if (!(e > 0)) throw InvalidArgument("eps must be positive");
  const std::size_t chunks = chunk_count(count);
  std::vector<std::vector<std::size_t>> hits(chunks, std::vector<std::size_t>(eps.size()));
  parallel_for(chunks, exec, [&](std::size_t c) {
    std::array<std::complex<double>, 16> z{};
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      fill_sample(p.n, i, seed, streams::kSphere, z.data());
      const double mod = std::abs(p(std::span(z.data(), static_cast<std::size_t>(p.n))));
      for (std::size_t e = 0; e < eps.size(); ++e)
        if (mod < eps[e]) ++hits[c][e];
    }
  });
  std::vector<TEpsEstimate> out(eps.size());
  const double nn = static_cast<double>(count);
  for (std::size_t e = 0; e < eps.size(); ++e) {
    std::size_t h = 0;
    for (const auto& row : hits) h += row[e];
    const double q = static_cast<double>(h) / nn;
    out[e] = {eps[e], q, std::sqrt(q * (1.0 - q) / nn)};
  }
  return out;
}

TEpsEstimate t_eps_measure(const PowerSum& p, double eps, std::size_t count, std::uint64_t seed,
                           Execution exec) {
  const double e[1] = {eps};
  return t_eps_sweep(p, e, count, seed, exec).front();
}

TEpsEstimate t_eps_measure(const PowerSum& p, double eps, std::span<const SpherePoint> samples) {
  check_power_sum(p);
  if (samples.empty()) throw InvalidArgument("sample set is empty");
  std::size_t h = 0;
  for (const auto& z : samples) {
    if (z.size() != static_cast<std::size_t>(p.n)) throw InvalidArgument("sample dimension mismatch");
    if (std::abs(p(z)) < eps) ++h;
  }
  const double nn = static_cast<double>(samples.size());
  const double q = static_cast<double>(h) / nn;
  return {eps, q, std::sqrt(q * (1.0 - q) / nn)};
}

LineFit t_eps_slope(std::span<const TEpsEstimate> sweep) {
  std::vector<double> x, y;
  for (const auto& t : sweep) {
    if (!(t.estimate > 0)) continue;
    x.push_back(std::log(t.eps));
    y.push_back(std::log(t.estimate));
  }
  return fit_line(x, y);
}

SingularEstimate singular_sphere_integral(const PowerSum& p, std::size_t count, std::uint64_t seed,
                                          Execution exec) {
  check_power_sum(p);
  if (count < 2) throw InvalidArgument("sample count must be at least 2");
  const double power = -2.0 * p.n / p.k;
  const std::size_t chunks = chunk_count(count);

  struct ChunkSums {
    std::array<double, kMaxLevel> level_sum{};
    std::array<std::size_t, kMaxLevel> level_count{};
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<ChunkSums> parts(chunks);
  std::vector<double> values(count);
  parallel_for(chunks, exec, [&](std::size_t c) {
    std::array<std::complex<double>, 16> z{};
    ChunkSums& cs = parts[c];
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      fill_sample(p.n, i, seed, streams::kSphere, z.data());
      const double mod = std::max(std::abs(p(std::span(z.data(), static_cast<std::size_t>(p.n)))),
                                  std::numeric_limits<double>::min());
      const double v = std::pow(mod, power);
      values[i] = v;
      const int s = std::clamp(static_cast<int>(std::floor(-std::log2(mod))), 0, kMaxLevel - 1);
      cs.level_sum[static_cast<std::size_t>(s)] += v;
      ++cs.level_count[static_cast<std::size_t>(s)];
      cs.sum += v;
      cs.sum_sq += v * v;
    }
  });

  ChunkSums total;
  for (const auto& cs : parts) {
    for (int s = 0; s < kMaxLevel; ++s) {
      total.level_sum[static_cast<std::size_t>(s)] += cs.level_sum[static_cast<std::size_t>(s)];
      total.level_count[static_cast<std::size_t>(s)] += cs.level_count[static_cast<std::size_t>(s)];
    }
    total.sum += cs.sum;
    total.sum_sq += cs.sum_sq;
  }

  SingularEstimate out;
  const double nn = static_cast<double>(count);
  const double mean = total.sum / nn;
  const double var = std::max(0.0, (total.sum_sq / nn - mean * mean) * nn / (nn - 1.0));
  out.estimate.value = mean;
  out.estimate.abs_error = std::sqrt(var / nn);
  out.reference_ratio = std::exp2(-2.0 * (1.0 - 2.0 / p.k));

  std::vector<double> xs, ys;
  for (int s = 0; s < kMaxLevel; ++s) {
    const auto cnt = total.level_count[static_cast<std::size_t>(s)];
    if (cnt == 0) continue;
    const double contrib = total.level_sum[static_cast<std::size_t>(s)] / nn;
    out.levels.push_back({s, cnt, contrib});
    if (s >= kFirstFittedLevel && cnt >= kMinLevelCount) {
      xs.push_back(s);
      ys.push_back(std::log2(contrib));
    }
  }

  out.tail = hill_tail_index(values);
  out.heavy_tail = out.tail.index < 2.0;
  if (xs.size() < 3) {
    out.estimate.classification = MassClass::Inconclusive;
    out.estimate.rule = "too few populated levels";
    return out;
  }
  out.level_ratio = std::exp2(fit_line(xs, ys).slope);
  out.estimate.tail_ratio = out.level_ratio;
  const TailVerdict tv = classify_mean(out.tail);
  if (out.level_ratio < kMaxTailRatio && tv != TailVerdict::InfiniteMean) {
    out.estimate.classification = MassClass::Finite;
    out.estimate.rule = "geometric level decay";
  } else {
    out.estimate.classification = MassClass::Inconclusive;
    out.estimate.rule = "level sums do not decay; divergence suspected";
  }
  return out;
}

LelongEstimate lelong_estimate(const PowerSum& p, std::span<const std::complex<double>> a,
                               std::span<const double> radii, std::uint64_t seed,
                               int boundary_samples) {
  check_power_sum(p);
  if (a.size() != static_cast<std::size_t>(p.n)) throw InvalidArgument("point dimension mismatch");
  double anorm = 0.0;
  for (const auto& x : a) anorm += std::norm(x);
  anorm = std::sqrt(anorm);
  if (!(anorm > 0)) throw InvalidArgument("the Lelong estimate needs a != 0");
  if (boundary_samples < 1) throw InvalidArgument("boundary_samples must be positive");

  LelongEstimate out;
  if (radii.empty()) {
    out.radii = {1e-2 * anorm, 1e-3 * anorm, 1e-4 * anorm};
  } else {
    out.radii.assign(radii.begin(), radii.end());
  }
  if (out.radii.size() < 2) throw InvalidArgument("need at least two radii");
  for (std::size_t i = 0; i < out.radii.size(); ++i) {
    const double r = out.radii[i];
    if (!(r > 0) || !(r < anorm / 4)) throw InvalidArgument("radii must lie in (0, |a|/4)");
    if (i > 0 && !(r < out.radii[i - 1])) throw InvalidArgument("radii must be decreasing");
  }

  std::vector<std::complex<double>> pt(static_cast<std::size_t>(p.n));
  const auto nb = static_cast<std::uint64_t>(boundary_samples);
  for (double r : out.radii) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < nb; ++i) {
      double logmod = -std::numeric_limits<double>::infinity();
      for (int attempt = 0; attempt <= kDegenerateRetries; ++attempt) {
        const SpherePoint zeta =
            sphere_sample(p.n, i + static_cast<std::uint64_t>(attempt) * nb, seed, streams::kLelong);
        for (int j = 0; j < p.n; ++j)
          pt[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)] + r * zeta[static_cast<std::size_t>(j)];
        const double mod = std::abs(p(pt));
        if (mod > 0) {
          logmod = std::log(mod);
          break;
        }
      }
      if (!std::isfinite(logmod))
        throw DegenerateError("P vanishes at every jittered boundary sample");
      best = std::max(best, logmod);
    }
    out.sup_log.push_back(best);
  }

  // Fit over the three smallest radii.
  const std::size_t m = std::min<std::size_t>(3, out.radii.size());
  std::vector<double> x, y;
  for (std::size_t i = out.radii.size() - m; i < out.radii.size(); ++i) {
    x.push_back(std::log(out.radii[i]));
    y.push_back(out.sup_log[i]);
  }
  out.fit = fit_line(x, y);
  out.value = out.fit.slope;
  return out;
}

}  // namespace fockdim
