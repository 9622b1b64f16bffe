#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fockdim/hermitian.hpp"
#include "fockdim/weight.hpp"

namespace fockdim {

/// Second-order Wirtinger jet of a scalar at a point of C^n.
/// Only the mixed block d^2/dz_j dzbar_k is carried.
template <class T>
struct CJet2 {
  int n = 1;
  std::complex<T> val{};
  std::vector<std::complex<T>> dz;
  std::vector<std::complex<T>> dzbar;
  /// Row-major, dzdzbar[j*n + k] = d^2 / dz_j dzbar_k.
  std::vector<std::complex<T>> dzdzbar;

  const std::complex<T>& h(int j, int k) const {
    return dzdzbar[static_cast<std::size_t>(j * n + k)];
  }
};

/// Value and first two derivatives of a radial profile phi(t).
struct RJet2 {
  double val = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Forward-mode evaluation. z.size() must equal expr.nvars().
CJet2<double> jet_eval(const WeightExpr& expr, std::span<const std::complex<double>> z);
CJet2<long double> jet_eval(const WeightExpr& expr, std::span<const std::complex<long double>> z);

/// Levi matrix (d^2 psi / dz_j dzbar_k). Throws std::logic_error when the raw
/// Hessian deviates from Hermitian by more than 1e-12 (1 + ||H||).
HermitianMatrix levi(const WeightExpr& expr, std::span<const std::complex<double>> z);

/// Levi matrix evaluated in extended precision and returned as
/// `scale * matrix` with max |matrix entry| = 1 (or a zero matrix and scale 0).
/// Reaches |z|^2 up to about e^11000, where double overflows.
struct ScaledLevi {
  HermitianMatrix matrix;
  long double scale = 0.0L;
};
ScaledLevi levi_scaled(const WeightExpr& expr, std::span<const std::complex<long double>> z);

/// Delta psi = 4 d^2 psi / dz dzbar for a one-variable weight.
double laplacian1(const WeightExpr& expr, std::complex<double> z);

RJet2 radial_jet(const WeightExpr& profile, double t);

}  // namespace fockdim
