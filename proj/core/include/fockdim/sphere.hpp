#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fockdim/lowdisc.hpp"
#include "fockdim/measure.hpp"
#include "fockdim/parallel.hpp"
#include "fockdim/philox.hpp"
#include "fockdim/stats.hpp"

namespace fockdim {

/// Surface area of the unit sphere S^(2n-1) in C^n: 2 pi^n / (n-1)!.
double sphere_area(int n);

/// Sample `index` of the i.i.d. uniform stream keyed by `seed`.
SpherePoint sphere_sample(int n, std::uint64_t index, std::uint64_t seed,
                          std::uint32_t stream = streams::kSphere);

/// `count` i.i.d. uniform points (normalized complex Gaussians).
std::vector<SpherePoint> sample_sphere(int n, std::size_t count, std::uint64_t seed);

/// P(z) = z_1^k + ... + z_n^k.
struct PowerSum {
  int k = 3;
  int n = 2;

  std::complex<double> operator()(std::span<const std::complex<double>> z) const;
};

struct TEpsEstimate {
  double eps = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
};

/// sigma{zeta : |P(zeta)| < eps} with binomial standard error.
TEpsEstimate t_eps_measure(const PowerSum& p, double eps, std::size_t count, std::uint64_t seed,
                           Execution exec = {});

/// Same estimator on an explicit sample set.
TEpsEstimate t_eps_measure(const PowerSum& p, double eps, std::span<const SpherePoint> samples);

/// All thresholds evaluated on one shared sample set, so estimates are monotone in eps.
std::vector<TEpsEstimate> t_eps_sweep(const PowerSum& p, std::span<const double> eps,
                                      std::size_t count, std::uint64_t seed, Execution exec = {});

/// Least-squares slope of log(estimate) against log(eps); zero estimates are skipped.
LineFit t_eps_slope(std::span<const TEpsEstimate> sweep);

/// Contribution of the level set |P| in (2^(-s-1), 2^(-s)].
struct LevelSum {
  int s = 0;
  std::size_t count = 0;
  double contribution = 0.0;
};

struct SingularEstimate {
  /// value = MC mean of |P|^(-2n/k); abs_error = standard error.
  MeasureEstimate estimate;
  std::vector<LevelSum> levels;
  /// Per-level ratio fitted over populated levels s >= 2.
  double level_ratio = 0.0;
  /// 2^(-2(1 - 2/k)), the per-level ratio of the level-set bound.
  double reference_ratio = 0.0;
  TailIndex tail;
  /// Integrand tail index below 2: the standard error is unreliable.
  bool heavy_tail = false;
};

/// Monte Carlo estimate of the sphere average of |P|^(-2n/k) with a dyadic level decomposition.
SingularEstimate singular_sphere_integral(const PowerSum& p, std::size_t count, std::uint64_t seed,
                                          Execution exec = {});

struct LelongEstimate {
  double value = 0.0;
  std::vector<double> radii;
  /// max over boundary samples of log|P(a + z)|, |z| = r.
  std::vector<double> sup_log;
  LineFit fit;
};

/// Slope of sup_{|z|<=r} log|P(a+z)| against log r over the three smallest radii.
/// Empty `radii` selects {1e-2, 1e-3, 1e-4} |a|.
LelongEstimate lelong_estimate(const PowerSum& p, std::span<const std::complex<double>> a,
                               std::span<const double> radii = {}, std::uint64_t seed = 7,
                               int boundary_samples = 256);

}  // namespace fockdim
