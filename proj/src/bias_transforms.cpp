#include "levystein/bias_transforms.hpp"

#include <algorithm>
#include <iomanip>
#include <memory>

namespace levystein {

namespace {

BiasLaw make_bias(std::string name, TabulatedSpec spec) {
  BiasLaw b;
  b.name = std::move(name);
  b.normalizer = spec.normalizer;
  for (const Atom& a : spec.atoms)
    if (a.location == 0.0) b.atom_mass += a.mass / spec.normalizer;
  b.table = TabulatedLaw(spec);
  b.spec = std::move(spec);
  return b;
}

std::vector<double> positive_breaks(const LevyMeasure& nu, int s) {
  std::vector<double> out;
  for (double b : nu.breakpoints)
    if (s * b > 0) out.push_back(std::abs(b));
  for (const Atom& a : nu.atoms)
    if (s * a.location > 0) out.push_back(std::abs(a.location));
  return out;
}

double max_atom(const LevyMeasure& nu, int s) {
  double m = 0.0;
  for (const Atom& a : nu.atoms)
    if (s * a.location > 0) m = std::max(m, std::abs(a.location));
  return m;
}

// int_{(lo,hi]} u nu(du) restricted to one side, |u| in (a, b]
double side_first_moment(const LevyMeasure& nu, int s, double a, double b) {
  double t = 0.0;
  for (const Atom& at : nu.atoms) {
    double v = s * at.location;
    if (v > a && v <= b) t += v * at.mass;
  }
  return t + nu.integrate_side([](double v) { return v; }, s, a, b);
}

double side_second_moment(const LevyMeasure& nu, int s) {
  double t = 0.0;
  for (const Atom& at : nu.atoms)
    if (s * at.location > 0) t += at.location * at.location * at.mass;
  return t + nu.integrate_side([](double v) { return v * v; }, s, 0.0, kInf);
}

}  // namespace

double BiasLaw::mass_by_quadrature(const QuadratureConfig& cfg) const {
  double total = 0.0;
  for (const Atom& a : spec.atoms) total += a.mass;
  if (spec.density) {
    for (int s : {+1, -1}) {
      const SideShape& sh = s > 0 ? spec.plus : spec.minus;
      if (!sh.present()) continue;
      std::vector<double> cuts{sh.lo};
      for (double b : (s > 0 ? spec.breaks_plus : spec.breaks_minus))
        if (b > sh.lo && b < sh.hi) cuts.push_back(b);
      if (1.0 > sh.lo && 1.0 < sh.hi) cuts.push_back(1.0);
      std::sort(cuts.begin(), cuts.end());
      cuts.push_back(sh.hi);
      auto g = [&](double v) { return spec.density(s, v); };
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (a == 0.0 && std::isinf(b)) total += integrate_to_zero(g, 1.0, cfg).value + integrate_to_inf(g, 1.0, cfg).value;
        else if (a == 0.0) total += integrate_to_zero(g, b, cfg).value;
        else if (std::isinf(b)) total += integrate_to_inf(g, a, cfg).value;
        else total += integrate(g, a, b, cfg).value;
      }
    }
  }
  return total / spec.normalizer;
}

void BiasLaw::export_csv(std::ostream& os, const std::vector<double>& grid) const {
  os << "x,density,cdf\n" << std::setprecision(17);
  for (double x : grid) os << x << ',' << density(x) << ',' << cdf(x) << '\n';
}

SizeBiasPair size_bias_pair(const IDLaw& law) {
  const LevyTriplet& tr = law.require_triplet();
  const LevyMeasure& nu = tr.nu;
  if (!std::isfinite(nu.abs_moment_small()))
    throw Error(ErrorKind::AssumptionViolated, law.name + ": int_{|u|<=1} |u| nu(du) diverges, no size-bias pair");
  mean_of(law);
  SizeBiasPair sb;
  sb.b0 = convert_representation(tr, Representation::Drift);
  const double bp = std::max(sb.b0, 0.0), bm = std::max(-sb.b0, 0.0);
  sb.m0_plus = bp + side_first_moment(nu, +1, 0.0, kInf);
  sb.m0_minus = bm + side_first_moment(nu, -1, 0.0, kInf);
  if (sb.m0_plus == 0.0 && sb.m0_minus == 0.0)
    throw Error(ErrorKind::AssumptionViolated, law.name + ": m0+ = m0- = 0");
  auto dens = nu.density;
  for (int s : {+1, -1}) {
    const double m0 = s > 0 ? sb.m0_plus : sb.m0_minus;
    if (m0 == 0.0) continue;
    TabulatedSpec sp;
    if (dens) sp.density = [dens, s](int side, double v) { return side == s ? v * dens(s * v) : 0.0; };
    (s > 0 ? sp.plus : sp.minus) = nu.side(s);
    (s > 0 ? sp.breaks_plus : sp.breaks_minus) = positive_breaks(nu, s);
    const double b0s = s > 0 ? bp : bm;
    if (b0s > 0) sp.atoms.push_back({0.0, b0s});
    for (const Atom& a : nu.atoms)
      if (s * a.location > 0) sp.atoms.push_back({a.location, std::abs(a.location) * a.mass});
    sp.normalizer = m0;
    (s > 0 ? sb.Yplus : sb.Yminus) = make_bias(s > 0 ? "Y+" : "Y-", sp);
  }
  return sb;
}

ZeroBias zero_bias(const IDLaw& law) {
  const LevyTriplet& tr = law.require_triplet();
  const LevyMeasure& nu = tr.nu;
  ZeroBias zb;
  zb.total = nu.second_moment();
  if (!std::isfinite(zb.total)) throw Error(ErrorKind::AssumptionViolated, law.name + ": infinite second moment");
  if (!(zb.total > 0.0)) throw Error(ErrorKind::AssumptionViolated, law.name + ": Lévy measure is zero");
  zb.mass_plus = side_second_moment(nu, +1);
  zb.mass_minus = side_second_moment(nu, -1);
  auto pnu = std::make_shared<const LevyMeasure>(nu);
  auto eta = [pnu](int s, double v) { return s > 0 ? pnu->tail_plus(v) : pnu->tail_minus(-v); };
  auto shape = [&](int s) {
    SideShape sh;
    const double hi = std::max(nu.side(s).present() ? nu.side(s).hi : 0.0, max_atom(nu, s));
    if (hi > 0) sh = SideShape{0.0, hi, nu.side(s).present() ? nu.side(s).tail : TailKind::Compact, 0.0, 0.0};
    return sh;
  };
  TabulatedSpec sp;
  sp.density = eta;
  sp.plus = shape(+1);
  sp.minus = shape(-1);
  sp.breaks_plus = positive_breaks(nu, +1);
  sp.breaks_minus = positive_breaks(nu, -1);
  sp.normalizer = zb.total;
  zb.Y = make_bias("Y", sp);
  for (int s : {+1, -1}) {
    const double mass = s > 0 ? zb.mass_plus : zb.mass_minus;
    if (mass == 0.0) continue;
    TabulatedSpec q = sp;
    (s > 0 ? q.minus : q.plus) = SideShape{};
    q.normalizer = mass;
    (s > 0 ? zb.Yplus : zb.Yminus) = make_bias(s > 0 ? "Y+" : "Y-", q);
  }
  return zb;
}

MixedTransform mixed_transform(const IDLaw& law) {
  const LevyTriplet& tr = law.require_triplet();
  const LevyMeasure& nu = tr.nu;
  MixedTransform mt;
  mt.m_plus = side_first_moment(nu, +1, 1.0, kInf);
  mt.m_minus = side_first_moment(nu, -1, 1.0, kInf);
  mt.m = mt.m_plus + mt.m_minus;
  if (!std::isfinite(mt.m) || mt.m == 0.0)
    throw Error(ErrorKind::AssumptionViolated, law.name + ": need 0 != int_{|u|>1} |u| nu(du) < inf");
  mt.quad_mass = nu.second_moment_small();
  if (!(mt.quad_mass > 0.0)) throw Error(ErrorKind::AssumptionViolated, law.name + ": int_{-1}^{1} u^2 nu(du) = 0");
  auto pnu = std::make_shared<const LevyMeasure>(nu);
  // eta truncated at +-1: int_{(v,1]} u nu(du), int_{[-1,-v)} (-u) nu(du)
  auto eta1 = [pnu](int s, double v) -> double {
    if (v >= 1.0) return 0.0;
    if (s > 0 && pnu->tail_plus_closed) return pnu->tail_plus(v) - pnu->tail_plus(1.0);
    if (s < 0 && pnu->tail_minus_closed) {
      double extra = 0.0;
      for (const Atom& a : pnu->atoms)
        if (a.location == -1.0) extra += a.mass;
      return pnu->tail_minus(-v) - pnu->tail_minus(-1.0) + extra;
    }
    return side_first_moment(*pnu, s, v, 1.0);
  };
  {
    TabulatedSpec sp;
    sp.density = eta1;
    for (int s : {+1, -1}) {
      bool has = (nu.side(s).present() && nu.side(s).lo < 1.0);
      for (const Atom& a : nu.atoms)
        if (s * a.location > 0 && std::abs(a.location) <= 1.0) has = true;
      if (has) (s > 0 ? sp.plus : sp.minus) = SideShape{0.0, 1.0, TailKind::Compact, 0.0, 0.0};
    }
    sp.breaks_plus = positive_breaks(nu, +1);
    sp.breaks_minus = positive_breaks(nu, -1);
    sp.normalizer = mt.quad_mass;
    mt.U = make_bias("U", sp);
  }
  auto dens = nu.density;
  for (int s : {+1, -1}) {
    TabulatedSpec sp;
    if (dens) sp.density = [dens, s](int side, double v) { return (side == s && v > 1.0) ? v * dens(s * v) : 0.0; };
    SideShape sh = nu.side(s);
    if (sh.present() && sh.hi > 1.0) {
      sh.lo = std::max(sh.lo, 1.0);
      (s > 0 ? sp.plus : sp.minus) = sh;
    }
    (s > 0 ? sp.breaks_plus : sp.breaks_minus) = positive_breaks(nu, s);
    const double at0 = s > 0 ? mt.m_minus : mt.m_plus;
    if (at0 > 0) sp.atoms.push_back({0.0, at0});
    for (const Atom& a : nu.atoms)
      if (s * a.location > 1.0) sp.atoms.push_back({a.location, std::abs(a.location) * a.mass});
    sp.normalizer = mt.m;
    (s > 0 ? mt.Vplus : mt.Vminus) = make_bias(s > 0 ? "V+" : "V-", sp);
  }
  return mt;
}

Estimate size_bias_residual(const IDLaw& law, const SizeBiasPair& sb, const TestFunction& f, std::size_t n,
                            std::uint64_t seed) {
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = law.draw(r);
    double t = x * f.f(x);
    if (!sb.Yplus.empty()) t -= sb.m0_plus * f.f(x + sb.Yplus.draw(r));
    if (!sb.Yminus.empty()) t += sb.m0_minus * f.f(x + sb.Yminus.draw(r));
    return t;
  });
}

Estimate zero_bias_residual(const IDLaw& law, const ZeroBias& zb, const TestFunction& f, std::size_t n,
                            std::uint64_t seed) {
  const double mu = mean_of(law);
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = law.draw(r);
    return (x - mu) * f.f(x) - zb.total * f.derivative(x + zb.Y.draw(r));
  });
}

Estimate zero_bias_split_residual(const IDLaw& law, const ZeroBias& zb, const TestFunction& f, std::size_t n,
                                  std::uint64_t seed) {
  const double mu = mean_of(law);
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = law.draw(r);
    double t = (x - mu) * f.f(x);
    if (!zb.Yplus.empty()) t -= zb.mass_plus * f.derivative(x + zb.Yplus.draw(r));
    if (!zb.Yminus.empty()) t -= zb.mass_minus * f.derivative(x + zb.Yminus.draw(r));
    return t;
  });
}

Estimate mixed_residual(const IDLaw& law, const MixedTransform& mt, const TestFunction& f, std::size_t n,
                        std::uint64_t seed) {
  const double mu = mean_of(law);
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = law.draw(r);
    const double u = mt.U.draw(r), vp = mt.Vplus.draw(r), vm = mt.Vminus.draw(r);
    return (x - mu) * f.f(x) - mt.quad_mass * f.derivative(x + u) - mt.m * f.f(x + vp) + mt.m * f.f(x + vm);
  });
}

Estimate equilibrium_residual(const IDLaw& law, const TestFunction& f, std::size_t n, std::uint64_t seed) {
  const double f0 = f.f(0.0);
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = law.draw(r);
    const double w = r.uniform();
    return f.f(x) - f0 - x * f.derivative(w * x);
  });
}

Estimate equilibrium_sizebias_residual(const IDLaw& law, const SizeBiasPair& sb, const TestFunction& f,
                                       std::size_t n, std::uint64_t seed) {
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = law.draw(r);
    const double w = r.uniform();
    double t = x * f.derivative(w * x);
    if (!sb.Yplus.empty()) t -= sb.m0_plus * f.derivative(w * (x + sb.Yplus.draw(r)));
    if (!sb.Yminus.empty()) t += sb.m0_minus * f.derivative(w * (x + sb.Yminus.draw(r)));
    return t;
  });
}

}  // namespace levystein
