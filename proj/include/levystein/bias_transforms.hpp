#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "levystein/stein_ops.hpp"
#include "levystein/tabulated_law.hpp"

namespace levystein {

/// Probability law: atom at 0 plus an absolutely continuous part (and, for lattice
/// Lévy measures, further atoms away from 0).
struct BiasLaw {
  std::string name;
  double normalizer = 0.0;  // the mass the raw measure was divided by
  double atom_mass = 0.0;   // at 0
  TabulatedLaw table;
  TabulatedSpec spec;       // raw description, kept for independent checks

  double cdf(double x) const { return table.cdf(x); }
  double density(double x) const { return table.density(x); }
  double draw(RandomStream& r) const { return table.draw(r); }
  bool empty() const { return normalizer == 0.0; }
  /// atom masses + int density, by adaptive quadrature independent of the tabulation.
  double mass_by_quadrature(const QuadratureConfig& cfg = {}) const;
  /// Columns x, density, cdf.
  void export_csv(std::ostream& os, const std::vector<double>& grid) const;
};

struct SizeBiasPair {
  double b0 = 0.0;
  double m0_plus = 0.0, m0_minus = 0.0;
  BiasLaw Yplus, Yminus;  // either may be empty (one-sided variant)
};

/// Needs int |u| nu(du) < inf; AssumptionViolated otherwise.
SizeBiasPair size_bias_pair(const IDLaw& law);

struct ZeroBias {
  double total = 0.0;                  // int u^2 nu(du)
  double mass_plus = 0.0, mass_minus = 0.0;  // int_{u>0} u^2 nu, int_{u<0} u^2 nu
  BiasLaw Y, Yplus, Yminus;
};

/// Needs int u^2 nu(du) < inf and nu != 0.
ZeroBias zero_bias(const IDLaw& law);

struct MixedTransform {
  double quad_mass = 0.0;  // int_{-1}^{1} u^2 nu(du)
  double m_plus = 0.0, m_minus = 0.0, m = 0.0;
  BiasLaw U, Vplus, Vminus;
};

/// Needs 0 != int_{|u|>1} |u| nu < inf and int_{-1}^1 u^2 nu != 0.
MixedTransform mixed_transform(const IDLaw& law);

/// E X f(X) - m0+ E f(X+Y+) + m0- E f(X+Y-).
Estimate size_bias_residual(const IDLaw& law, const SizeBiasPair& sb, const TestFunction& f, std::size_t n,
                            std::uint64_t seed);
/// Cov(X, f(X)) - total E f'(X+Y).
Estimate zero_bias_residual(const IDLaw& law, const ZeroBias& zb, const TestFunction& f, std::size_t n,
                            std::uint64_t seed);
/// Same identity through the split (Y+, Y-).
Estimate zero_bias_split_residual(const IDLaw& law, const ZeroBias& zb, const TestFunction& f, std::size_t n,
                                  std::uint64_t seed);
/// Cov(X, f(X)) - quad E f'(X+U) - m E f(X+V+) + m E f(X+V-).
Estimate mixed_residual(const IDLaw& law, const MixedTransform& mt, const TestFunction& f, std::size_t n,
                        std::uint64_t seed);
/// E f(X) - f(0) - E X f'(W X) with W uniform on (0,1).
Estimate equilibrium_residual(const IDLaw& law, const TestFunction& f, std::size_t n, std::uint64_t seed);
/// E X f'(W X) - m0+ E f'(W(X+Y+)) + m0- E f'(W(X+Y-)).
Estimate equilibrium_sizebias_residual(const IDLaw& law, const SizeBiasPair& sb, const TestFunction& f,
                                       std::size_t n, std::uint64_t seed);

}  // namespace levystein
