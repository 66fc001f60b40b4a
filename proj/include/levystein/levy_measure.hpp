#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "levystein/quadrature.hpp"

namespace levystein {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Atom {
  double location;
  double mass;
};

enum class TailKind { Compact, Exponential, Power };

/// Shape of the density on one half-line, u = side * v with v > 0.
struct SideShape {
  double lo = 0.0;           // density vanishes for v < lo
  double hi = 0.0;           // and for v > hi; hi == 0 means no density on this side
  TailKind tail = TailKind::Compact;
  double tail_index = 0.0;   // density ~ v^{-1-tail_index} at infinity (Power)
  double zero_index = 0.0;   // density ~ v^{-1-zero_index} at 0
  bool present() const { return hi > lo; }
};

/// Lévy measure: density part on R\{0} plus finitely many atoms.
class LevyMeasure {
 public:
  std::function<double(double)> density;
  /// Continuation v -> density(side*v) off the real axis, Re v > 0; used for power tails.
  std::function<std::complex<double>(int side, std::complex<double> v)> analytic_side;
  SideShape plus, minus;
  std::vector<double> breakpoints;  // interior discontinuities of the density
  std::vector<Atom> atoms;
  /// psi with nu(du) = psi(u)/|u| du (self-decomposable entries).
  std::function<double(double)> k_function;

  // Optional closed forms; the generic quadrature is used when these are empty.
  std::function<double(double)> tail_plus_closed;   // v > 0
  std::function<double(double)> tail_minus_closed;  // v < 0
  std::optional<double> abs_moment_small_closed, abs_moment_tail_closed, second_moment_small_closed,
      second_moment_closed, first_moment_small_closed, first_moment_tail_closed;

  const SideShape& side(int s) const { return s > 0 ? plus : minus; }
  bool has_density() const { return static_cast<bool>(density) && (plus.present() || minus.present()); }

  /// Copy with every closed-form functional removed (forces generic quadrature).
  LevyMeasure generic_copy() const;

  /// True when nu has an atom at 0, or negative masses, or a non-finite mass.
  bool malformed() const;

  /// Integral of g(u) nu(du) over lo < u <= hi, u != 0, atoms included.
  template <class G>
  auto integrate(G&& g, double lo, double hi, const QuadratureConfig& cfg = {}) const
      -> decltype(g(1.0));

  /// Integral of g(v) * density(side*v) dv over a < v <= b (0 <= a < b <= inf).
  template <class G>
  auto integrate_side(G&& g, int side, double a, double b, const QuadratureConfig& cfg = {}) const
      -> decltype(g(1.0));

  double tail_plus(double v, const QuadratureConfig& cfg = {}) const;   // int_v^inf u nu(du), v > 0
  double tail_minus(double v, const QuadratureConfig& cfg = {}) const;  // int_-inf^v (-u) nu(du), v < 0
  double abs_moment_small(const QuadratureConfig& cfg = {}) const;      // may be +inf
  double abs_moment_tail(const QuadratureConfig& cfg = {}) const;       // may be +inf
  double second_moment_small(const QuadratureConfig& cfg = {}) const;
  double second_moment(const QuadratureConfig& cfg = {}) const;         // may be +inf
  double first_moment_small(const QuadratureConfig& cfg = {}) const;    // int_{|u|<=1} u nu, needs abs moment
  double first_moment_tail(const QuadratureConfig& cfg = {}) const;     // int_{|u|>1} u nu
  double mass_outside(double r, const QuadratureConfig& cfg = {}) const;  // nu(|u| > r)
};

struct LevyTriplet {
  double b = 0.0;
  double sigma2 = 0.0;
  LevyMeasure nu;
};

enum class Representation { Standard, Drift, Center };

/// Location parameter of the requested representation (b, b0 or b1).
double convert_representation(const LevyTriplet& tr, Representation target, const QuadratureConfig& cfg = {});

/// Triplet whose standard location reproduces the given location in representation `from`.
LevyTriplet triplet_from(double location, Representation from, double sigma2, LevyMeasure nu,
                         const QuadratureConfig& cfg = {});

/// Lévy exponent i t b - sigma2 t^2/2 + int (e^{itu}-1-itu 1_{|u|<=1}) nu(du).
std::complex<double> exponent_from_triplet(const LevyTriplet& tr, double t, const QuadratureConfig& cfg = {});
std::complex<double> charfn_from_triplet(const LevyTriplet& tr, double t, const QuadratureConfig& cfg = {});

/// e^{i th} - 1 - i th without cancellation for small th.
std::complex<double> expm1i_compensated(double th);

// ---------------------------------------------------------------------------

template <class G>
auto LevyMeasure::integrate_side(G&& g, int s, double a, double b, const QuadratureConfig& cfg) const
    -> decltype(g(1.0)) {
  using T = decltype(g(1.0));
  T total{};
  const SideShape& sh = side(s);
  if (!density || !sh.present()) return total;
  a = std::max(a, sh.lo);
  b = std::min(b, sh.hi);
  if (!(b > a)) return total;
  std::vector<double> cuts{a};
  for (double bp : breakpoints) {
    double v = s * bp;
    if (v > a && v < b) cuts.push_back(v);
  }
  if (1.0 > a && 1.0 < b) cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(b);
  auto f = [&](double v) -> T { return g(v) * density(s * v); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (lo == 0.0 && std::isinf(hi)) {
      total += integrate_to_zero(f, 1.0, cfg).value + integrate_to_inf(f, 1.0, cfg).value;
    } else if (lo == 0.0) {
      total += integrate_to_zero(f, hi, cfg).value;
    } else if (std::isinf(hi)) {
      total += integrate_to_inf(f, lo, cfg).value;
    } else {
      total += levystein::integrate(f, lo, hi, cfg).value;
    }
  }
  return total;
}

template <class G>
auto LevyMeasure::integrate(G&& g, double lo, double hi, const QuadratureConfig& cfg) const
    -> decltype(g(1.0)) {
  using T = decltype(g(1.0));
  T total{};
  for (const Atom& at : atoms)
    if (at.location > lo && at.location <= hi) total += at.mass * g(at.location);
  if (hi > 0.0) {
    auto gp = [&](double v) -> T { return g(v); };
    total += integrate_side(gp, +1, std::max(lo, 0.0), hi, cfg);
  }
  if (lo < 0.0) {
    auto gm = [&](double v) -> T { return g(-v); };
    // (lo, hi] on the negative axis is [ -min(hi,0), -lo ) in v
    total += integrate_side(gm, -1, std::max(-hi, 0.0), -lo, cfg);
  }
  return total;
}

}  // namespace levystein
