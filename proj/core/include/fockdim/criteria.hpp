#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fockdim/measure.hpp"
#include "fockdim/riesz.hpp"
#include "fockdim/weight.hpp"

namespace fockdim {

enum class CriterionVerdict { Satisfied, Violated, Inconclusive };
std::string_view to_string(CriterionVerdict v);

/// A sampled point and the statistic computed there.
struct Sample {
  /// r * zeta, or the unit direction zeta when r * zeta is not representable in double.
  std::vector<std::complex<double>> point;
  bool point_is_direction = false;
  double radius = 0.0;
  double log2_radius = 0.0;
  double statistic = 0.0;
};

struct CriterionReport {
  std::string criterion;
  CriterionVerdict verdict = CriterionVerdict::Inconclusive;
  /// Present for Violated.
  std::optional<Sample> witness;
  /// Most negative statistic seen (psh criterion).
  std::optional<Sample> worst;
  /// One summary sample per radius.
  std::vector<Sample> samples;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::string> notes;
  /// Radial criterion: fitted limit of r phi'(r) when finite.
  std::optional<double> fitted_limit;
};

/// Settings of the [criteria] table.
struct CriteriaConfig {
  int n_dirs = 64;
  double growth_threshold = 1e3;
  /// Regression slope above which s(r) counts as divergent.
  double slope_threshold = 0.1;
  /// PSD tolerance relative to the largest Levi entry.
  double psd_rel_tol = 1e-9;
  /// Shells between R and r_max = R * 2^r_max_octaves.
  int r_max_octaves = 10;
  /// Largest log2 R tried by the R scan.
  double max_log2_R = 7000.0;
  Execution exec;
};

/// Default radii 2^4, 2^5, ..., 2^14.
std::vector<double> default_shigekawa_radii();

/// s(r) = min over directions of r^2 lambda_min(L_psi(r zeta)).
CriterionReport shigekawa_check(const WeightExpr& psi, std::span<const double> radii,
                                const CriteriaConfig& cfg = {});

/// psi - M log|z|^2 plurisubharmonic on R <= |z| <= r_max (sampled). r_max <= 0 selects
/// R * 2^cfg.r_max_octaves. Evaluated in extended precision, so R may reach 2^7000.
CriterionReport psh_outside_compact(const WeightExpr& psi, double M, long double R,
                                    long double r_max, const CriteriaConfig& cfg = {});

/// Searches for R with psh_outside_compact Satisfied: R = 2^(2^j), then bisection on log2 R.
CriterionReport psh_outside_compact_scan(const WeightExpr& psi, double M,
                                         const CriteriaConfig& cfg = {});

/// Default schedule r = 2^j, j = 1..64.
std::vector<double> default_radial_schedule();

/// Radial Monge-Ampere criterion for psi = phi(|z|^2) on s(r) = r phi'(r).
CriterionReport radial_criterion(const WeightExpr& phi, std::span<const double> schedule,
                                 const CriteriaConfig& cfg = {});

/// lim (r phi'(r))^n, Infinite when r phi'(r) diverges.
MeasureEstimate monge_ampere_mass(const WeightExpr& phi, int n, std::span<const double> schedule,
                                  const CriteriaConfig& cfg = {});

/// One factor of a separable weight psi(z) = sum_j psi_j(z_j).
struct SeparableComponent {
  std::string label;
  /// Either a one-variable weight or its Riesz density.
  std::optional<WeightExpr> expr;
  Density density;
  AtomList atoms;
};

struct SeparableReport {
  DimReport combined;
  std::vector<DimReport> components;
};

SeparableReport separable_dimension(std::span<const SeparableComponent> components,
                                    const QuadConfig& cfg = {});

struct CounterexampleReport {
  SeparableReport separable;
  /// Product of component Riesz masses; Infinite when a factor is.
  MeasureEstimate monge_ampere;
  bool contradiction = false;
  std::vector<std::string> notes;
};

/// psi_1 = |z|^2, Delta psi_2 = max(1 - |z|, 0) on C^2.
CounterexampleReport counterexample_report(const QuadConfig& cfg = {});

}  // namespace fockdim
