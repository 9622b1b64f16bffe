#include "fockdim/riesz.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockdim/wirtinger.hpp"

namespace fockdim {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr unsigned kMaxBisections = 15;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

bool near_atom(std::complex<double> z, const AtomList& atoms, double radius) {
  for (const Atom& a : atoms)
    if (std::abs(z - a.location) < radius) return true;
  return false;
}

MeasureEstimate integrate_density(const Density& density, const QuadConfig& cfg,
                                  const AtomList& excised) {
  if (cfg.n_theta < 4) throw InvalidArgument("n_theta must be at least 4");
  if (!(cfg.rel_tol > 0)) throw InvalidArgument("rel_tol must be positive");
  const int nt = cfg.n_theta;
  std::vector<std::complex<double>> unit(static_cast<std::size_t>(nt));
  for (int j = 0; j < nt; ++j)
    unit[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / nt);

  // r * integral over theta of the density, trapezoid rule in theta.
  auto ring = [&](double r) {
    double s = 0.0;
    for (const auto& u : unit) {
      const std::complex<double> z = r * u;
      if (!excised.empty() && near_atom(z, excised, cfg.atom_excision)) continue;
      s += density(z);
    }
    return r * s * (2.0 * std::numbers::pi / nt);
  };

  return integrate_shells(
      [&](std::size_t, double lo, double hi) {
        double error = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            ring, lo, hi, kMaxBisections, cfg.rel_tol, &error);
        return ShellValue{v, error};
      },
      cfg);
}

}  // namespace

void validate_atoms(const AtomList& atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].mass > 0) || !std::isfinite(atoms[i].mass))
      throw InvalidArgument("atom masses must be positive and finite");
    for (std::size_t j = 0; j < i; ++j)
      if (atoms[i].location == atoms[j].location)
        throw InvalidArgument("atom locations must be distinct");
  }
}

AtomSplit split_atoms(const AtomList& atoms) {
  validate_atoms(atoms);
  AtomSplit out;
  for (const Atom& a : atoms) {
    const double q = std::floor(a.mass / kFourPi);
    const double whole = kFourPi * q;
    const double rest = a.mass - whole;
    if (q > 0) out.discrete.push_back({a.location, whole});
    if (rest > 0) out.remainder.push_back({a.location, rest});
  }
  return out;
}

MeasureEstimate riesz_mass(const WeightExpr& expr, const QuadConfig& cfg, const AtomList& excised) {
  if (expr.nvars() != 1 || expr.is_radial_profile())
    throw InvalidArgument("riesz_mass requires a weight in one complex variable");
  return integrate_density([&](std::complex<double> z) { return laplacian1(expr, z); }, cfg,
                           excised);
}

MeasureEstimate riesz_mass(const Density& density, const QuadConfig& cfg, const AtomList& excised) {
  return integrate_density(density, cfg, excised);
}

long long ceil_strict(double x) { return static_cast<long long>(std::ceil(x)) - 1; }

std::string_view to_string(DimVerdict v) {
  switch (v) {
    case DimVerdict::FiniteDim: return "FiniteDim";
    case DimVerdict::InfiniteDim: return "InfiniteDim";
    case DimVerdict::ZeroDim: return "ZeroDim";
    case DimVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DimReport dimension_from_mass(double mass_c, double abs_error, const QuadConfig& cfg) {
  DimReport rep;
  rep.mass_c = mass_c;
  double x = mass_c / kFourPi;
  const double k = std::round(x);
  const double gap = std::abs(mass_c - kFourPi * k);
  const double band = cfg.margin * kFourPi;
  rep.evidence.push_back("mu^c(C)/4pi = " + fmt(x));
  // The clamped formula is continuous at and below 0.
  if (k >= 1 && (gap <= band || (!cfg.exact && gap <= abs_error))) {
    if (!cfg.exact) {
      rep.verdict = DimVerdict::Inconclusive;
      rep.evidence.push_back("mass lies within the margin of 4pi*" + fmt(k) +
                             "; the dimension formula is discontinuous there");
      return rep;
    }
    x = k;
    rep.evidence.push_back("exact mode: mass snapped to 4pi*" + fmt(k));
  }
  rep.verdict = DimVerdict::FiniteDim;
  rep.dim = std::max(0LL, ceil_strict(x));
  rep.evidence.push_back("dim = max(0, largest integer strictly below mu^c(C)/4pi) = " +
                         std::to_string(rep.dim));
  return rep;
}

namespace {

DimReport finish_dimension(MeasureEstimate mass, const AtomList& atoms, const QuadConfig& cfg) {
  const AtomSplit split = split_atoms(atoms);
  DimReport rep;
  if (mass.classification == MassClass::Infinite) {
    rep.verdict = DimVerdict::InfiniteDim;
    rep.evidence.push_back("Riesz mass of the continuous part is infinite (" + mass.rule + ")");
    rep.mass_c = std::numeric_limits<double>::infinity();
  } else if (mass.classification == MassClass::Inconclusive) {
    rep.verdict = DimVerdict::Inconclusive;
    rep.evidence.push_back("Riesz mass could not be classified (" + mass.rule + ")");
    rep.mass_c = mass.value;
  } else {
    double mass_c = mass.value;
    for (const Atom& a : split.remainder) mass_c += a.mass;
    rep = dimension_from_mass(mass_c, mass.abs_error, cfg);
    rep.evidence.insert(rep.evidence.begin(),
                        "Riesz mass of the continuous part is finite: " + fmt(mass.value) + " +- " +
                            fmt(mass.abs_error) + " (" + mass.rule + ")");
  }
  rep.mass_continuous = std::move(mass);
  rep.atoms_folded = split.discrete;
  rep.atoms_remainder = split.remainder;
  return rep;
}

}  // namespace

DimReport fock_dimension(const WeightExpr& expr, const AtomList& atoms, const QuadConfig& cfg) {
  validate_atoms(atoms);
  return finish_dimension(riesz_mass(expr, cfg, atoms), atoms, cfg);
}

DimReport fock_dimension(const Density& density, const AtomList& atoms, const QuadConfig& cfg) {
  validate_atoms(atoms);
  return finish_dimension(riesz_mass(density, cfg, atoms), atoms, cfg);
}

double modified_potential(const AtomList& measure, double R, std::complex<double> z) {
  if (!(R > 1)) throw InvalidArgument("R must exceed 1");
  double near = 0.0;
  double far = 0.0;
  for (const Atom& a : measure) {
    const double d = std::abs(z - a.location);
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    const double ax = std::abs(a.location);
    if (ax < R)
      near += a.mass * std::log(d);
    else
      far += a.mass * std::log(d / ax);
  }
  return (near + far) / (2.0 * std::numbers::pi);
}

}  // namespace fockdim
