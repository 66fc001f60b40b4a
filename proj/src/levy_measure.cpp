#include "levystein/levy_measure.hpp"

#include <string>

namespace levystein {

namespace {

using cd = std::complex<double>;

bool near_zero_diverges(const SideShape& s, double power) {
  // int_0 v^power * v^{-1-zero_index} dv diverges when power <= zero_index
  return s.present() && s.lo == 0.0 && power <= s.zero_index;
}

bool tail_diverges(const SideShape& s, double power) {
  return s.present() && s.tail == TailKind::Power && std::isinf(s.hi) && power >= s.tail_index;
}

}  // namespace

LevyMeasure LevyMeasure::generic_copy() const {
  LevyMeasure m = *this;
  m.tail_plus_closed = nullptr;
  m.tail_minus_closed = nullptr;
  m.abs_moment_small_closed.reset();
  m.abs_moment_tail_closed.reset();
  m.second_moment_small_closed.reset();
  m.second_moment_closed.reset();
  m.first_moment_small_closed.reset();
  m.first_moment_tail_closed.reset();
  return m;
}

bool LevyMeasure::malformed() const {
  for (const Atom& a : atoms)
    if (a.location == 0.0 || !(a.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.location))
      return true;
  if (near_zero_diverges(plus, 2.0) || near_zero_diverges(minus, 2.0)) return true;
  return false;
}

double LevyMeasure::tail_plus(double v, const QuadratureConfig& cfg) const {
  if (!(v > 0.0)) throw Error(ErrorKind::DomainError, "tail_plus needs v > 0");
  if (tail_plus_closed) return tail_plus_closed(v);
  if (tail_diverges(plus, 1.0)) return kInf;
  return integrate([](double u) { return u; }, v, kInf, cfg);
}

double LevyMeasure::tail_minus(double v, const QuadratureConfig& cfg) const {
  if (!(v < 0.0)) throw Error(ErrorKind::DomainError, "tail_minus needs v < 0");
  if (tail_minus_closed) return tail_minus_closed(v);
  if (tail_diverges(minus, 1.0)) return kInf;
  // (-inf, v] : integrate over (-inf, v] == (lo, hi] with hi = v
  return integrate([](double u) { return -u; }, -kInf, v, cfg);
}

double LevyMeasure::abs_moment_small(const QuadratureConfig& cfg) const {
  if (abs_moment_small_closed) return *abs_moment_small_closed;
  if (near_zero_diverges(plus, 1.0) || near_zero_diverges(minus, 1.0)) return kInf;
  return integrate([](double u) { return std::abs(u); }, -1.0, 1.0, cfg);
}

double LevyMeasure::abs_moment_tail(const QuadratureConfig& cfg) const {
  if (abs_moment_tail_closed) return *abs_moment_tail_closed;
  if (tail_diverges(plus, 1.0) || tail_diverges(minus, 1.0)) return kInf;
  return integrate([](double u) { return std::abs(u); }, -kInf, -1.0, cfg) +
         integrate([](double u) { return std::abs(u); }, 1.0, kInf, cfg);
}

double LevyMeasure::second_moment_small(const QuadratureConfig& cfg) const {
  if (second_moment_small_closed) return *second_moment_small_closed;
  return integrate([](double u) { return u * u; }, -1.0, 1.0, cfg);
}

double LevyMeasure::second_moment(const QuadratureConfig& cfg) const {
  if (second_moment_closed) return *second_moment_closed;
  if (tail_diverges(plus, 2.0) || tail_diverges(minus, 2.0)) return kInf;
  return integrate([](double u) { return u * u; }, -kInf, kInf, cfg);
}

double LevyMeasure::first_moment_small(const QuadratureConfig& cfg) const {
  if (first_moment_small_closed) return *first_moment_small_closed;
  if (std::isinf(abs_moment_small(cfg)))
    throw Error(ErrorKind::RepresentationUnavailable, "small-jump first moment diverges");
  return integrate([](double u) { return u; }, -1.0, 1.0, cfg);
}

double LevyMeasure::first_moment_tail(const QuadratureConfig& cfg) const {
  if (first_moment_tail_closed) return *first_moment_tail_closed;
  if (std::isinf(abs_moment_tail(cfg)))
    throw Error(ErrorKind::RepresentationUnavailable, "large-jump first moment diverges");
  return integrate([](double u) { return u; }, -kInf, -1.0, cfg) +
         integrate([](double u) { return u; }, 1.0, kInf, cfg);
}

double LevyMeasure::mass_outside(double r, const QuadratureConfig& cfg) const {
  if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "mass_outside needs r > 0");
  auto one = [](double) { return 1.0; };
  return integrate(one, -kInf, -r, cfg) + integrate(one, r, kInf, cfg) -
         // integrate over (lo,hi] includes u = -r; remove an atom sitting exactly there
         [&] {
           double m = 0;
           for (const Atom& a : atoms)
             if (a.location == -r) m += a.mass;
           return m;
         }();
}

double convert_representation(const LevyTriplet& tr, Representation target, const QuadratureConfig& cfg) {
  switch (target) {
    case Representation::Standard: return tr.b;
    case Representation::Drift: return tr.b - tr.nu.first_moment_small(cfg);
    case Representation::Center: return tr.b + tr.nu.first_moment_tail(cfg);
  }
  return tr.b;
}

LevyTriplet triplet_from(double location, Representation from, double sigma2, LevyMeasure nu,
                         const QuadratureConfig& cfg) {
  LevyTriplet tr{location, sigma2, std::move(nu)};
  if (from == Representation::Drift) tr.b = location + tr.nu.first_moment_small(cfg);
  if (from == Representation::Center) tr.b = location - tr.nu.first_moment_tail(cfg);
  return tr;
}

std::complex<double> expm1i_compensated(double th) {
  double s2 = std::sin(0.5 * th);
  double re = -2.0 * s2 * s2;
  double im;
  if (std::abs(th) < 0.25) {
    double t2 = th * th;
    // sin(th) - th
    im = th * t2 * (-1.0 / 6 + t2 * (1.0 / 120 + t2 * (-1.0 / 5040 + t2 * (1.0 / 362880 - t2 / 39916800))));
  } else {
    im = std::sin(th) - th;
  }
  return {re, im};
}

namespace {

// int_1^inf (e^{i t s v} - 1) dens(s v) dv for one side.
cd large_jump_part(const LevyMeasure& nu, int s, double t, const QuadratureConfig& cfg) {
  const SideShape& sh = nu.side(s);
  if (!sh.present() || sh.hi <= 1.0) return 0.0;
  const double tau = t * s;
  if (sh.tail == TailKind::Power && nu.analytic_side && std::isinf(sh.hi) && sh.lo <= 1.0) {
    if (tau == 0.0) return 0.0;
    const double sg = tau > 0 ? 1.0 : -1.0;
    const double a = std::abs(tau);
    auto h = [&](double y) -> cd { return std::exp(-a * y) * nu.analytic_side(s, cd(1.0, sg * y)); };
    cd j = integrate(h, 0.0, 1.0, cfg).value + integrate_to_inf(h, 1.0, cfg).value;
    cd osc = cd(0.0, sg) * std::exp(cd(0.0, tau)) * j;
    double mass = nu.integrate_side([](double) { return 1.0; }, s, 1.0, kInf, cfg);
    return osc - mass;
  }
  auto g = [&](double v) -> cd { return std::exp(cd(0.0, tau * v)) - 1.0; };
  return nu.integrate_side(g, s, 1.0, kInf, cfg);
}

}  // namespace

std::complex<double> exponent_from_triplet(const LevyTriplet& tr, double t, const QuadratureConfig& cfg) {
  if (tr.nu.malformed()) throw Error(ErrorKind::InvalidTriplet, "Lévy measure has an atom at 0 or is not a Lévy measure");
  if (tr.sigma2 < 0.0) throw Error(ErrorKind::InvalidTriplet, "negative Gaussian variance");
  cd e(-0.5 * tr.sigma2 * t * t, t * tr.b);
  if (t == 0.0) return 0.0;
  for (const Atom& a : tr.nu.atoms) {
    double th = t * a.location;
    cd term = std::abs(a.location) <= 1.0 ? expm1i_compensated(th) : std::exp(cd(0.0, th)) - 1.0;
    e += a.mass * term;
  }
  if (tr.nu.density) {
    for (int s : {+1, -1}) {
      auto small = [&](double v) -> cd { return expm1i_compensated(t * s * v); };
      e += tr.nu.integrate_side(small, s, 0.0, 1.0, cfg);
      e += large_jump_part(tr.nu, s, t, cfg);
    }
  }
  return e;
}

std::complex<double> charfn_from_triplet(const LevyTriplet& tr, double t, const QuadratureConfig& cfg) {
  return std::exp(exponent_from_triplet(tr, t, cfg));
}

}  // namespace levystein
