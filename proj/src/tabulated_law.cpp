#include "levystein/tabulated_law.hpp"

#include <algorithm>

namespace levystein {

namespace {

constexpr double kGrowth = 1.02;
constexpr double kHeadNode = 1e-12;
constexpr std::size_t kMaxCells = 20000;

double hermite(double Ga, double Gb, double da, double db, double h, double t) {
  const double t2 = t * t, t3 = t2 * t;
  return Ga * (2 * t3 - 3 * t2 + 1) + h * da * (t3 - 2 * t2 + t) + Gb * (-2 * t3 + 3 * t2) + h * db * (t3 - t2);
}

}  // namespace

TabulatedLaw::TabulatedLaw(TabulatedSpec spec, const QuadratureConfig& cfg)
    : g_(std::move(spec.density)), norm_(spec.normalizer), atoms_(std::move(spec.atoms)) {
  if (!(norm_ > 0.0) || !std::isfinite(norm_)) throw Error(ErrorKind::DomainError, "tabulated law: normaliser must be positive");
  for (Atom& a : atoms_) a.mass /= norm_;
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  if (g_) {
    plus_ = build(+1, spec.plus, spec.breaks_plus, cfg);
    minus_ = build(-1, spec.minus, spec.breaks_minus, cfg);
  }
}

TabulatedLaw::Side TabulatedLaw::build(int sign, const SideShape& sh, std::vector<double> breaks,
                                       const QuadratureConfig& cfg) const {
  Side s;
  s.sign = sign;
  if (!sh.present()) return s;
  auto g = [&](double v) { return g_(sign, v) / norm_; };
  const double v0 = sh.lo > 0 ? sh.lo : std::min(kHeadNode, 0.5 * sh.hi);
  double G0 = 0.0;
  if (sh.lo == 0.0) {
    G0 = integrate_to_zero(g, v0, cfg).value;
    const double gv = g(v0);
    s.head_power = G0 > 0 ? std::clamp(gv * v0 / G0, 1e-3, 1e3) : 1.0;
  }
  breaks.push_back(1.0);
  if (std::isfinite(sh.hi)) breaks.push_back(sh.hi);
  std::sort(breaks.begin(), breaks.end());
  double last_break = 0.0;
  for (double b : breaks)
    if (b > v0 && b <= sh.hi) last_break = std::max(last_break, b);

  s.v.push_back(v0);
  s.G.push_back(G0);
  double v = v0, cum = G0;
  QuadratureConfig cell = cfg;
  cell.abs_tol = std::max(1e-300, cfg.abs_tol * 1e-6);
  while (true) {
    double nxt = v * kGrowth;
    for (double b : breaks)
      if (b > v * (1 + 1e-12) && b <= nxt * (1 + 1e-9)) {
        nxt = b;
        break;
      }
    nxt = std::min(nxt, sh.hi);
    const double h = nxt - v;
    const double m = integrate(g, v, nxt, cell).value;
    double dl = g(v + 1e-9 * h), dr = g(nxt - 1e-9 * h);
    const double delta = m / h;
    if (delta <= 0.0) {
      dl = dr = 0.0;
    } else {
      double a = dl / delta, b = dr / delta, r = a * a + b * b;
      if (r > 9.0) {
        double tau = 3.0 / std::sqrt(r);
        dl = tau * a * delta;
        dr = tau * b * delta;
      }
    }
    s.dl.push_back(dl);
    s.dr.push_back(dr);
    cum += m;
    s.v.push_back(nxt);
    s.G.push_back(cum);
    v = nxt;
    if (v >= sh.hi) break;
    const bool negligible = v > std::max(1.0, last_break) && m < 1e-17 * cum;
    if (negligible || s.v.size() > kMaxCells) {
      s.tail_mass = integrate_to_inf(g, v, cfg).value;
      s.tail_power = s.tail_mass > 0 ? std::max(1e-3, g(v) * v / s.tail_mass) : 1.0;
      break;
    }
  }
  s.mass = cum + s.tail_mass;
  return s;
}

double TabulatedLaw::Side::mass_upto(double w) const {
  if (v.empty() || w <= 0.0) return 0.0;
  if (w <= v.front()) return G.front() > 0 ? G.front() * std::pow(w / v.front(), head_power) : 0.0;
  if (w >= v.back()) return mass - (tail_mass > 0 ? tail_mass * std::pow(v.back() / w, tail_power) : 0.0);
  std::size_t i = std::upper_bound(v.begin(), v.end(), w) - v.begin() - 1;
  const double h = v[i + 1] - v[i];
  return hermite(G[i], G[i + 1], dl[i], dr[i], h, (w - v[i]) / h);
}

double TabulatedLaw::Side::invert(double m) const {
  if (m <= G.front()) return G.front() > 0 ? v.front() * std::pow(m / G.front(), 1.0 / head_power) : v.front();
  if (m >= G.back()) {
    const double rem = mass - m;
    if (!(rem > 0.0) || tail_mass <= 0.0) return v.back();
    return v.back() * std::pow(tail_mass / rem, 1.0 / tail_power);
  }
  std::size_t i = std::upper_bound(G.begin(), G.end(), m) - G.begin() - 1;
  i = std::min(i, v.size() - 2);
  double a = v[i], b = v[i + 1];
  for (int it = 0; it < 60 && b - a > 1e-15 * b; ++it) {
    double c = 0.5 * (a + b);
    (mass_upto(c) < m ? a : b) = c;
  }
  return 0.5 * (a + b);
}

double TabulatedLaw::cdf(double x) const {
  double F = 0.0;
  for (const Atom& a : atoms_)
    if (a.location <= x) F += a.mass;
  if (x < 0.0) return F + minus_.mass - minus_.mass_upto(-x);
  return F + minus_.mass + plus_.mass_upto(x);
}

double TabulatedLaw::density(double x) const {
  if (!g_ || x == 0.0) return 0.0;
  const int s = x > 0 ? 1 : -1;
  const Side& sd = s > 0 ? plus_ : minus_;
  if (sd.v.empty()) return 0.0;
  return g_(s, std::abs(x)) / norm_;
}

double TabulatedLaw::total_mass() const {
  double t = plus_.mass + minus_.mass;
  for (const Atom& a : atoms_) t += a.mass;
  return t;
}

double TabulatedLaw::draw(RandomStream& rng) const {
  double u = rng.uniform() * total_mass();
  for (const Atom& a : atoms_) {
    if (u < a.mass) return a.location;
    u -= a.mass;
  }
  if (u < minus_.mass && !minus_.v.empty()) return -minus_.invert(u);
  u -= minus_.mass;
  if (plus_.v.empty()) return minus_.v.empty() ? 0.0 : -minus_.invert(minus_.mass);
  return plus_.invert(std::min(u, plus_.mass));
}

std::vector<double> TabulatedLaw::nodes() const {
  std::vector<double> out;
  for (double v : minus_.v) out.push_back(-v);
  for (double v : plus_.v) out.push_back(v);
  for (const Atom& a : atoms_) out.push_back(a.location);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace levystein
