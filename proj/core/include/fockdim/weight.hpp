#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fockdim/error.hpp"

namespace fockdim {

/// Node kinds of a weight expression.
enum class Op : std::uint8_t {
  Var,      // complex coordinate z_j
  Param,    // real radial variable t (profiles phi(t) only)
  Const,    // real literal
  Add,
  Sub,
  Mul,
  Neg,
  Conj,
  Abs2,     // |e|^2
  Abs,      // |e|
  IntPow,   // e^k, k integer, any tag
  RealPow,  // e^p, e real and positive
  Log,      // log e, e real and positive
  Exp,      // exp e, e real
  NormSq,   // |z_1|^2 + ... + |z_m|^2
};

std::string_view op_name(Op op);

/// One tape entry. Children always precede their parent.
struct Node {
  Op op = Op::Const;
  bool real = true;
  std::int32_t lhs = -1;
  std::int32_t rhs = -1;
  /// Var: 1-based index. IntPow: exponent. NormSq: number of coordinates.
  std::int32_t ival = 0;
  /// Const: literal. RealPow: exponent.
  double dval = 0.0;
};

/// Immutable, type-checked real-valued weight psi(z_1..z_n), or a radial
/// profile phi(t) when the expression is written in the real variable t.
class WeightExpr {
 public:
  /// Takes ownership of a tape; type-checks it and fixes nvars.
  explicit WeightExpr(std::vector<Node> tape);

  /// Constant weight on C^nvars.
  static WeightExpr constant(double c, int nvars = 1);

  const std::vector<Node>& tape() const noexcept { return tape_; }
  std::int32_t root() const noexcept { return static_cast<std::int32_t>(tape_.size()) - 1; }
  int nvars() const noexcept { return nvars_; }
  bool is_radial_profile() const noexcept { return radial_; }

  /// Same expression viewed on C^n, n >= nvars().
  WeightExpr widened(int n) const;

  friend bool operator==(const WeightExpr& a, const WeightExpr& b);

 private:
  std::vector<Node> tape_;
  int nvars_ = 1;
  bool radial_ = false;
};

WeightExpr parse(std::string_view text);

/// Exact recursive evaluation. z.size() must be at least expr.nvars().
double eval(const WeightExpr& expr, std::span<const std::complex<double>> z);

/// Evaluates a radial profile phi at t.
double eval_profile(const WeightExpr& profile, double t);

/// Canonical infix form; parse(to_string(e)) reproduces e.
std::string to_string(const WeightExpr& expr);

// Combinators. Operands are widened to a common nvars.
WeightExpr operator+(const WeightExpr& a, const WeightExpr& b);
WeightExpr operator-(const WeightExpr& a, const WeightExpr& b);
WeightExpr operator*(double c, const WeightExpr& a);

/// psi(z) = phi(|z|^2) on C^n.
WeightExpr radial_weight(const WeightExpr& profile, int n);

/// M log|z|^2 on C^n.
WeightExpr log_norm_weight(double M, int n);

/// prod_j |z_j|^(2 alpha_j); nvars = alpha.size().
WeightExpr monomial_modulus(std::span<const int> alpha);

}  // namespace fockdim
