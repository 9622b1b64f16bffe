#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fockdim/measure.hpp"
#include "fockdim/stats.hpp"
#include "fockdim/weight.hpp"

namespace fockdim {

enum class Convergence { Converges, Diverges, Inconclusive };
std::string_view to_string(Convergence c);

/// Classification of the integral of g e^(-psi) over C^n.
struct Verdict {
  Convergence classification = Convergence::Inconclusive;
  /// Meaningful for Converges.
  double value = 0.0;
  double error = 0.0;
  std::vector<Shell> shell_log;
  std::string rule;
  /// n >= 2: tail index of the per-direction radial integrals.
  std::optional<TailIndex> direction_tail;
  /// n >= 2 and direction tail index below 2: the error is a standard error of
  /// an infinite-variance estimator and is not reliable.
  bool heavy_tail = false;
};

/// g must be non-negative; g.nvars() <= psi.nvars().
Verdict weighted_integral(const WeightExpr& g, const WeightExpr& psi, const QuadConfig& cfg);

/// g = prod_j |z_j|^(2 alpha_j); alpha.size() == psi.nvars(), |alpha| <= 64.
Verdict monomial_in_space(const WeightExpr& psi, std::span<const int> alpha, const QuadConfig& cfg);

struct MonomialVerdict {
  std::vector<int> alpha;
  Convergence classification = Convergence::Inconclusive;
};

struct LowerBound {
  int count = 0;
  std::vector<MonomialVerdict> monomials;
};

/// Counts monomials with |alpha| <= max_total_degree (<= 20) classified Converges.
LowerBound dimension_lower_bound(const WeightExpr& psi, int max_total_degree, const QuadConfig& cfg);

/// Dominating integral of e^(-(1 - 2 beta)|z1^k + z2^k|^2) over C^2; k >= 3, 0 <= beta < 1/2.
Verdict exp_family_witness(int k, double beta, const QuadConfig& cfg);

}  // namespace fockdim
