#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fockdim/parallel.hpp"

namespace fockdim {

enum class MassClass { Finite, Infinite, Inconclusive };
std::string_view to_string(MassClass c);

/// One dyadic shell r in [r_lo, r_hi). The innermost shell is the disk [0, 2^m_min).
struct Shell {
  int m = 0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  double mass = 0.0;
  double error = 0.0;
};

/// Value of an improper integral with an error bound and a finiteness verdict.
struct MeasureEstimate {
  double value = 0.0;
  double abs_error = 0.0;
  MassClass classification = MassClass::Inconclusive;
  std::vector<Shell> shells;
  /// Geometric ratio fitted over the last shells (0 when not fitted).
  double tail_ratio = 0.0;
  /// Which rule produced the classification.
  std::string rule;
};

/// Quadrature and shell-classification settings ([quadrature] table).
struct QuadConfig {
  int n_theta = 64;
  double rel_tol = 1e-8;
  int m_min = -4;
  int m_max = 40;
  double infinity_cutoff = 1e6;
  double atom_excision = 1e-3;
  /// Inconclusive band around multiples of 4 pi, as a fraction of 4 pi.
  double margin = 1e-3;
  /// Take the mass as exact and snap to the 4 pi lattice instead of reporting Inconclusive.
  bool exact = false;
  /// Sphere directions per shell for n >= 2.
  int n_sphere = 4096;
  std::uint64_t seed = 42;
  Execution exec;
};

/// Number of trailing shells inspected by the tail rules.
inline constexpr int kTailWindow = 5;
/// Upper bound on the fitted geometric ratio for a Finite verdict.
inline constexpr double kMaxTailRatio = 0.9;

struct TailDecision {
  bool decided = false;
  MassClass classification = MassClass::Inconclusive;
  double tail = 0.0;
  double ratio = 0.0;
  std::string rule;
};

/// Applies the tail rules to the shells seen so far. `total` is their sum;
/// `at_end` marks the last scheduled shell.
TailDecision classify_tail(std::span<const Shell> shells, double total, const QuadConfig& cfg,
                           bool at_end);

struct ShellValue {
  double mass = 0.0;
  double error = 0.0;
};

/// Integrates shell by shell (inner disk, then [2^m, 2^(m+1)) for m = m_min..m_max)
/// until the tail rules decide. `shell_fn(index, r_lo, r_hi)` must be thread-safe;
/// batches run in parallel but decisions are taken in shell order.
MeasureEstimate integrate_shells(
    const std::function<ShellValue(std::size_t, double, double)>& shell_fn, const QuadConfig& cfg);

/// Number of shells scheduled by integrate_shells.
std::size_t shell_count(const QuadConfig& cfg);

}  // namespace fockdim
