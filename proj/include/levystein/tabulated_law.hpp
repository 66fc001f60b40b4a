#pragma once

#include <functional>
#include <vector>

#include "levystein/levy_measure.hpp"
#include "levystein/random.hpp"

namespace levystein {

/// Law on R: atoms plus a density on each half-line, given up to a common normaliser.
struct TabulatedSpec {
  std::function<double(int side, double v)> density;  // unnormalised, at u = side * v, v > 0
  SideShape plus, minus;
  std::vector<double> breaks_plus, breaks_minus;  // interior kinks/jumps in v
  std::vector<Atom> atoms;                         // locations may include 0
  double normalizer = 1.0;
};

/// Numerically tabulated CDF with monotone cubic interpolation inside cells;
/// sampling by component selection and inversion.
class TabulatedLaw {
 public:
  TabulatedLaw() = default;
  explicit TabulatedLaw(TabulatedSpec spec, const QuadratureConfig& cfg = {});

  double cdf(double x) const;
  double density(double x) const;
  double draw(RandomStream& rng) const;
  /// Atom masses plus both side masses, after normalisation.
  double total_mass() const;
  double side_mass(int side) const { return side > 0 ? plus_.mass : minus_.mass; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  /// Breakpoints of the tabulation on R, sorted.
  std::vector<double> nodes() const;

 private:
  struct Side {
    int sign = 1;
    std::vector<double> v;     // nodes v_0 < v_1 < ... (v_0 > 0)
    std::vector<double> G;     // mass of (0, v_i]
    std::vector<double> dl, dr;  // limited slopes at the left/right end of each cell
    double head_power = 1.0;   // G(v) = G_0 (v/v_0)^p on (0, v_0]
    double tail_mass = 0.0;    // mass beyond v.back()
    double tail_power = 1.0;   // remaining mass ~ (v/v_last)^{-q}
    double mass = 0.0;
    double mass_upto(double w) const;
    double invert(double m) const;  // v with mass_upto(v) = m
  };
  Side build(int sign, const SideShape& sh, std::vector<double> breaks, const QuadratureConfig& cfg) const;

  std::function<double(int, double)> g_;
  double norm_ = 1.0;
  Side plus_, minus_;
  std::vector<Atom> atoms_;
};

}  // namespace levystein
