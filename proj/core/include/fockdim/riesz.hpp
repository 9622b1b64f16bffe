#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fockdim/measure.hpp"
#include "fockdim/weight.hpp"

namespace fockdim {

/// Point mass a * delta_x of a Riesz measure.
struct Atom {
  std::complex<double> location;
  double mass = 0.0;
};
using AtomList = std::vector<Atom>;

/// Throws InvalidArgument unless masses are positive and locations distinct.
void validate_atoms(const AtomList& atoms);

struct AtomSplit {
  /// Masses 4 pi floor(a / 4 pi); zero entries dropped.
  AtomList discrete;
  /// Masses a - 4 pi floor(a / 4 pi) in (0, 4 pi); zero entries dropped.
  AtomList remainder;
};
AtomSplit split_atoms(const AtomList& atoms);

/// Riesz density Delta psi as a callable, for weights given by their Laplacian.
using Density = std::function<double(std::complex<double>)>;

/// Mass of Delta psi over C, excluding disks of radius cfg.atom_excision around `excised`.
MeasureEstimate riesz_mass(const WeightExpr& expr, const QuadConfig& cfg,
                           const AtomList& excised = {});
MeasureEstimate riesz_mass(const Density& density, const QuadConfig& cfg,
                           const AtomList& excised = {});

/// Largest integer strictly below x.
long long ceil_strict(double x);

enum class DimVerdict { FiniteDim, InfiniteDim, ZeroDim, Inconclusive };
std::string_view to_string(DimVerdict v);

struct DimReport {
  DimVerdict verdict = DimVerdict::Inconclusive;
  /// Meaningful for FiniteDim.
  long long dim = 0;
  /// Mass of the absolutely continuous part (quadrature).
  MeasureEstimate mass_continuous;
  /// mu^c(C): continuous mass plus atom remainders.
  double mass_c = 0.0;
  AtomList atoms_folded;
  AtomList atoms_remainder;
  std::vector<std::string> evidence;
};

/// Dimension verdict from mu^c(C) with the margin and exact-snap rules of `cfg`.
DimReport dimension_from_mass(double mass_c, double abs_error, const QuadConfig& cfg);

DimReport fock_dimension(const WeightExpr& expr, const AtomList& atoms, const QuadConfig& cfg);
DimReport fock_dimension(const Density& density, const AtomList& atoms, const QuadConfig& cfg);

/// U(z) = (1/2pi) [sum_{|x|<R} m log|z-x| + sum_{|x|>=R} m log|(z-x)/x|].
/// Returns -infinity on the support.
double modified_potential(const AtomList& measure, double R, std::complex<double> z);

}  // namespace fockdim
