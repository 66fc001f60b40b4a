#include "levystein/fourier_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levystein/test_functions.hpp"

namespace levystein {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

template <class F>
double golden_max(F&& g, double a, double b, int iters = 80) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < iters && b - a > 1e-12 * (1.0 + std::abs(a)); ++i) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

CharFnGrid CharFnGrid::sample(const CharFn& cf, double T, std::size_t n_half, std::string source) {
  CharFnGrid g;
  g.source = std::move(source);
  const std::size_t n = 2 * n_half + 1;
  g.ts.resize(n);
  g.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = n_half ? T * (static_cast<double>(i) - static_cast<double>(n_half)) / n_half : 0.0;
    g.ts[i] = t;
    g.values[i] = t == 0.0 ? cd(1.0) : cf(t);
  }
  return g;
}

void CharFnGrid::export_csv(std::ostream& os) const {
  CsvWriter w(os);
  w.header({"t", "re", "im"});
  for (std::size_t i = 0; i < ts.size(); ++i) w.row({ts[i], values[i].real(), values[i].imag()});
}

void export_cdf_csv(std::ostream& os, const CdfFn& F, const std::vector<double>& xs) {
  CsvWriter w(os);
  w.header({"x", "F"});
  for (double x : xs) w.row({x, F(x)});
}

// ---------------------------------------------------------------------------

CdfInverter::CdfInverter(CharFn cf, InversionConfig cfg) : cf_(std::move(cf)), cfg_(std::move(cfg)) {
  for (const Atom& a : cfg_.atoms) atom_total_ += a.mass;
  double T = 0.5;
  for (;;) {
    double worst = 0.0;
    for (double f : {1.0, 1.25, 1.5, 1.75, 2.0}) worst = std::max(worst, std::abs(continuous(f * T)));
    if (worst < cfg_.tail_tol) {
      T_ = T;
      trunc_ = worst * std::log(std::max(cfg_.t_max / T, 1.0)) / kPi;
      break;
    }
    T *= 2.0;
    if (T > cfg_.t_max)
      throw Error(ErrorKind::SlowDecay, "|phi| still above " + std::to_string(cfg_.tail_tol) + " at t = " +
                                            std::to_string(cfg_.t_max));
  }
}

cd CdfInverter::continuous(double t) const {
  cd v = cf_(t);
  for (const Atom& a : cfg_.atoms) v -= a.mass * std::exp(cd(0.0, t * a.location));
  return v;
}

double CdfInverter::operator()(double x) const {
  auto g = [&](double t) { return std::imag(std::exp(cd(0.0, -t * x)) * continuous(t)) / t; };
  double I = integrate(g, 0.0, T_, cfg_.quad).value;
  double F = 0.5 * (1.0 - atom_total_) - I / kPi;
  for (const Atom& a : cfg_.atoms)
    if (a.location <= x) F += a.mass;
  return std::clamp(F, 0.0, 1.0);
}

double invert_cdf(const CharFn& cf, double x, const InversionConfig& cfg) { return CdfInverter(cf, cfg)(x); }

// ---------------------------------------------------------------------------

DistanceResult kolmogorov_distance_cdf(const CdfFn& a, const CdfFn& b, const std::vector<double>& grid) {
  DistanceResult r;
  if (grid.empty()) throw Error(ErrorKind::GridTooCoarse, "kolmogorov_distance: empty grid");
  std::vector<double> xs = grid;
  std::sort(xs.begin(), xs.end());
  auto gap = [&](double x) { return std::abs(a(x) - b(x)); };
  std::size_t best = 0;
  double bv = -1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double v = gap(xs[i]);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  double lo = xs[best > 0 ? best - 1 : best], hi = xs[best + 1 < xs.size() ? best + 1 : best];
  double xb = xs[best], prev = bv;
  for (int round = 0; round < 4 && hi > lo; ++round) {
    prev = bv;
    const int m = 32;
    double step = (hi - lo) / m;
    for (int k = 0; k <= m; ++k) {
      double x = lo + k * step, v = gap(x);
      if (v > bv) {
        bv = v;
        xb = x;
      }
    }
    lo = std::max(lo, xb - step);
    hi = std::min(hi, xb + step);
  }
  r.value = bv;
  r.x_at = xb;
  r.grid_error = bv - prev;
  return r;
}

DistanceResult kolmogorov_distance(const CharFn& a, const CharFn& b, const std::vector<double>& grid,
                                   const InversionConfig& cfg) {
  CdfInverter Fa(a, cfg), Fb(b, cfg);
  return kolmogorov_distance_cdf([&](double x) { return Fa(x); }, [&](double x) { return Fb(x); }, grid);
}

FourierDifference::FourierDifference(const CharFn& a, const CharFn& b, const FourierDiffConfig& cfg) {
  const Rule& gl = gauss_legendre(cfg.order);
  const int P = static_cast<int>(std::ceil(cfg.T / cfg.panel - 1e-9));
  const double h = cfg.T / P;
  for (int p = 0; p < P; ++p) {
    double c = (p + 0.5) * h;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      double t = c + 0.5 * h * gl.x[i];
      t_.push_back(t);
      w_.push_back(0.5 * h * gl.w[i]);
      d_.push_back((a(t) - b(t)) / t);
    }
  }
  tail_ = std::abs(a(cfg.T) - b(cfg.T)) / (kPi * cfg.T);
}

double FourierDifference::operator()(double x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < t_.size(); ++j) s += w_[j] * std::imag(std::exp(cd(0.0, -t_[j] * x)) * d_[j]);
  return -s / kPi;
}

DistanceResult kolmogorov_distance_fourier(const CharFn& a, const CharFn& b, const std::vector<double>& grid,
                                           const FourierDiffConfig& cfg) {
  FourierDifference D(a, b, cfg);
  DistanceResult r = kolmogorov_distance_cdf([&](double x) { return D(x); }, [](double) { return 0.0; }, grid);
  r.grid_error += D.tail_indicator();
  return r;
}

// ---------------------------------------------------------------------------

double w1_distance(const CdfFn& a, const CdfFn& b, const W1Config& cfg) {
  auto g = [&](double x) { return std::abs(a(x) - b(x)); };
  const double c = cfg.center, s = cfg.scale;
  std::vector<double> cuts{c - s};
  for (double x : cfg.breaks)
    if (x > c - s && x < c + s) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(c + s);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(g, cuts[i], cuts[i + 1], cfg.quad).value;
  try {
    total += integrate_to_inf([&](double y) { return g(c + y); }, s, cfg.quad).value;
    total += integrate_to_inf([&](double y) { return g(c - y); }, s, cfg.quad).value;
  } catch (const Error& e) {
    throw Error(ErrorKind::TailDivergence, std::string("w1_distance: tail not certified (") + e.what() + ")");
  }
  return total;
}

KsBracket ks_statistic(std::vector<double> sample, const CdfFn& F, std::size_t stride) {
  KsBracket r;
  const std::size_t n = sample.size();
  if (n == 0) return r;
  stride = std::max<std::size_t>(stride, 1);
  std::sort(sample.begin(), sample.end());
  const double dn = static_cast<double>(n);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  std::vector<double> Fv(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) Fv[k] = F(sample[idx[k]]);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    double i = static_cast<double>(idx[k]);
    r.lower = std::max({r.lower, (i + 1) / dn - Fv[k], Fv[k] - i / dn});
  }
  r.upper = std::max({r.lower, Fv.front(), 1.0 - Fv.back()});
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    double i = static_cast<double>(idx[k]), j = static_cast<double>(idx[k + 1]);
    r.upper = std::max({r.upper, j / dn - Fv[k], Fv[k + 1] - (i + 1) / dn});
  }
  return r;
}

// ---------------------------------------------------------------------------

double dawson_functional_log(const std::function<double(double)>& log_modulus, double t,
                             const QuadratureConfig& cfg) {
  t = std::abs(t);
  if (t == 0.0) return 0.0;
  const double lt = log_modulus(t);
  auto g = [&](double s) { return std::exp(lt - log_modulus(s)); };
  return integrate(g, 0.0, t, cfg).value;
}

double dawson_functional(const CharFn& cf, double t, const QuadratureConfig& cfg) {
  auto lm = [&](double s) {
    double m = std::abs(cf(s));
    if (!(m > 1e-300))
      throw Error(ErrorKind::NearZeroModulus, "|phi| underflows at s = " + std::to_string(s));
    return std::log(m);
  };
  return dawson_functional_log(lm, t, cfg);
}

double dawson_functional(const IDLaw& law, double t, const QuadratureConfig& cfg) {
  return dawson_functional_log([&](double s) { return std::real(law.log_charfn(s)); }, t, cfg);
}

DawsonFit fit_stable_dawson(double alpha, double t_max, std::size_t coarse, std::size_t fine) {
  if (!(alpha > 0 && alpha <= 2)) throw Error(ErrorKind::DomainError, "fit_stable_dawson: alpha in (0,2]");
  auto lm = [alpha](double s) { return -std::pow(std::abs(s), alpha); };
  QuadratureConfig q{1e-14, 1e-12, 2'000'000};
  auto ratio = [&](double t) { return dawson_functional_log(lm, t, q) * (1.0 + std::pow(t, alpha)) / t; };
  DawsonFit fit;
  fit.coarse_points = coarse;
  fit.fine_points = fine;
  std::size_t best = 1;
  double bv = -1.0;
  for (std::size_t i = 1; i <= coarse; ++i) {
    double v = ratio(t_max * i / coarse);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  double lo = t_max * (best - 1) / coarse, hi = t_max * std::min(best + 1, coarse) / coarse;
  double ts = golden_max(ratio, std::max(lo, 1e-9), hi);
  fit.t_at = ts;
  fit.C = std::max(bv, ratio(ts));
  for (std::size_t i = 1; i <= fine; ++i) {
    double v = ratio(t_max * i / fine);
    fit.overshoot = std::max(fit.overshoot, v / fit.C - 1.0);
  }
  if (!(fit.overshoot < 1e-3))
    throw Error(ErrorKind::FitFailure, "stable Dawson constant overshoots by " + std::to_string(fit.overshoot));
  return fit;
}

// ---------------------------------------------------------------------------

BoundReport esseen_bound(const std::function<double(double)>& eps, double T, double density_sup,
                         const QuadratureConfig& cfg) {
  if (!(T > 0)) throw Error(ErrorKind::DomainError, "esseen_bound: T must be positive");
  auto g = [&](double t) { return eps(t) / std::abs(t); };
  double I = integrate(g, -T, 0.0, cfg).value + integrate(g, 0.0, T, cfg).value;
  BoundReport r;
  r.name = "esseen";
  r.add("fourier_gap", kEsseenC1 * I).add("smoothing", kEsseenC2 * density_sup / T);
  r.params = {{"T", T}, {"density_sup", density_sup}, {"C1", kEsseenC1}, {"C2", kEsseenC2}};
  return r;
}

EsseenOptimum esseen_optimal(const std::function<double(double)>& eps, double density_sup, double T_lo,
                             double T_hi, const QuadratureConfig& cfg) {
  auto neg = [&](double u) { return -esseen_bound(eps, std::exp(u), density_sup, cfg).total(); };
  double u = golden_max(neg, std::log(T_lo), std::log(T_hi), 200);
  EsseenOptimum o;
  o.T = std::exp(u);
  o.report = esseen_bound(eps, o.T, density_sup, cfg);
  o.report.notes.push_back("T by golden-section search on log T");
  return o;
}

Transfers smoothing_transfers(double dw2, double density_sup, double w1) {
  if (!(dw2 >= 0.0) || dw2 >= 1.0) throw Error(ErrorKind::DomainError, "smoothing_transfers: need 0 <= dw2 < 1");
  if (!(density_sup >= 0.0) || !(w1 >= 0.0))
    throw Error(ErrorKind::DomainError, "smoothing_transfers: negative input");
  const Mollifier& rho = standard_mollifier();
  const double Cm = rho.dl1, m1 = rho.m1;
  Transfers t;
  t.eps = std::min(std::sqrt(Cm * dw2 / (2.0 * m1)), Cm);
  t.dw1_from_dw2 = t.eps > 0 ? 2.0 * m1 * t.eps + Cm * dw2 / t.eps : 0.0;
  t.C = std::max(2.0 * std::sqrt(2.0 * m1 * Cm), 2.0);
  t.dk_from_w1 = std::sqrt(2.0 * density_sup * w1);
  return t;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw Error(ErrorKind::FitFailure, "loglog_slope: need two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw Error(ErrorKind::FitFailure, "loglog_slope: nonpositive value");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace levystein
