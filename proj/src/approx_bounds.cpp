#include "levystein/approx_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace levystein {

namespace {

using cd = std::complex<double>;

void kolmogorov_from_delta(BoundReport& r, const DawsonExponent& d, double shift) {
  const double delta = r.total();
  const double e = 1.0 / (d.p + shift);
  r.params["p"] = d.p;
  r.params["exponent"] = e;
  if (d.C > 0) {
    r.derived["dK_bound"] = d.C * std::pow(delta, e);
    r.params["C"] = d.C;
  } else {
    r.notes.push_back("constant of the Kolmogorov bound not supplied; only Delta_n reported");
  }
}

CdfFn bias_cdf(const BiasLaw& b) {
  if (b.empty()) return [](double x) { return x >= 0 ? 1.0 : 0.0; };  // point mass at 0
  return [&b](double x) { return b.cdf(x); };
}

W1Config bias_w1_config() {
  W1Config c;
  c.center = 0.0;
  c.scale = 1.0;
  c.breaks = {0.0};
  return c;
}

// F_Y(x) of the zero-bias law straight from nu, without tabulation. For x > 0 this returns
// F_Y(x) - 1 = -int_{u>x} (u - x) u nu(du) / total: differences are unchanged and the right
// tail keeps its relative accuracy instead of sitting on a rounding floor next to 1.
double zero_bias_cdf_direct(const LevyMeasure& nu, double total, double x) {
  QuadratureConfig q{1e-14, 1e-12, 2'000'000};
  if (x <= 0.0) {
    if (!nu.minus.present() && nu.atoms.empty()) return 0.0;
    auto sq = [](double u) { return u * u; };
    double v = nu.integrate(sq, -kInf, x, q) + (x < 0 ? x * nu.tail_minus(x, q) : 0.0);
    return v / total;
  }
  if (!nu.plus.present() && nu.atoms.empty()) return 0.0;
  return -nu.integrate([x](double u) { return (u - x) * u; }, x, kInf, q) / total;
}

}  // namespace

BoundReport delta_sizebias(const IDLaw& law_n, const IDLaw& law_inf, const DawsonExponent& d) {
  SizeBiasPair a = size_bias_pair(law_n), b = size_bias_pair(law_inf);
  BoundReport r;
  r.name = "delta_sizebias";
  r.add("m0_plus_gap", std::abs(a.m0_plus - b.m0_plus)).add("m0_minus_gap", std::abs(a.m0_minus - b.m0_minus));
  auto w1 = [&](const BiasLaw& yn, const BiasLaw& yi, double m) {
    if (m == 0.0) return 0.0;
    return m * w1_distance(bias_cdf(yn), bias_cdf(yi), bias_w1_config());
  };
  r.add("w1_plus", w1(a.Yplus, b.Yplus, b.m0_plus)).add("w1_minus", w1(a.Yminus, b.Yminus, b.m0_minus));
  r.params = {{"law_n", law_n.name}, {"law_inf", law_inf.name}, {"m0_plus_inf", b.m0_plus},
              {"m0_minus_inf", b.m0_minus}};
  r.notes.push_back("W1 by the comonotone coupling, int |F_n - F_inf|");
  kolmogorov_from_delta(r, d, 2.0);
  return r;
}

BoundReport delta_zerobias(const IDLaw& law_n, const IDLaw& law_inf, W1Route route, const DawsonExponent& d) {
  ZeroBias a = zero_bias(law_n), b = zero_bias(law_inf);
  BoundReport r;
  r.name = "delta_zerobias";
  r.add("eta_gap", std::abs(a.total - b.total)).add("mean_gap", std::abs(mean_of(law_n) - mean_of(law_inf)));
  double w1;
  if (route == W1Route::Cdf) {
    w1 = w1_distance(bias_cdf(a.Y), bias_cdf(b.Y), bias_w1_config());
  } else {
    const LevyMeasure& nn = law_n.require_triplet().nu;
    const LevyMeasure& ni = law_inf.require_triplet().nu;
    W1Config c = bias_w1_config();
    c.quad = QuadratureConfig{1e-10, 1e-9, 4'000'000};
    w1 = w1_distance([&](double x) { return zero_bias_cdf_direct(nn, a.total, x); },
                     [&](double x) { return zero_bias_cdf_direct(ni, b.total, x); }, c);
  }
  r.add("w1", w1);
  r.params = {{"law_n", law_n.name},
              {"law_inf", law_inf.name},
              {"route", route == W1Route::Cdf ? "cdf" : "double_integral"}};
  kolmogorov_from_delta(r, d, 3.0);
  return r;
}

BoundReport delta_selfdecomp(const IDLaw& law_n, const IDLaw& law_inf, const DawsonExponent& d) {
  const auto& kn = law_n.k_function();
  const auto& ki = law_inf.k_function();
  for (const auto* k : {&kn, &ki}) {
    for (int s : {+1, -1}) {
      double prev = kInf;
      for (int j = -20; j <= 20; ++j) {
        double v = (*k)(s * std::pow(10.0, j / 5.0));
        if (v > prev * (1.0 + 1e-12) + 1e-300)
          throw Error(ErrorKind::AssumptionViolated, "delta_selfdecomp: k-function is not decreasing in |u|");
        prev = v;
      }
    }
  }
  QuadratureConfig q{1e-13, 1e-10, 2'000'000};
  BoundReport r;
  r.name = "delta_selfdecomp";
  r.add("mean_gap", std::abs(mean_of(law_n) - mean_of(law_inf)));
  for (int s : {+1, -1}) {
    auto gap = [&](double v) { return std::abs(kn(s * v) - ki(s * v)); };
    double small = integrate_to_zero([&](double v) { return v * gap(v); }, 1.0, q).value;
    double large = integrate_to_inf(gap, 1.0, q).value;
    r.add(s > 0 ? "psi1_small" : "psi2_small", small).add(s > 0 ? "psi1_large" : "psi2_large", large);
  }
  r.params = {{"law_n", law_n.name}, {"law_inf", law_inf.name}};
  kolmogorov_from_delta(r, d, 2.0);
  return r;
}

double chaos_delta(const std::vector<double>& lam_n, const std::vector<double>& lam_inf) {
  for (const auto* L : {&lam_n, &lam_inf})
    for (double l : *L)
      if (!(l > 0)) throw Error(ErrorKind::DomainError, "chaos_delta: eigenvalues must be positive");
  auto g = [&](double t) {
    double s = 0.0;
    for (double l : lam_inf) s += l * l * std::exp(-t / (2 * l));
    for (double l : lam_n) s -= l * l * std::exp(-t / (2 * l));
    return std::abs(s);
  };
  // panels pinned to the lambda scales so that no scale is skipped by a stopping rule
  double lo = kInf, hi = 0.0;
  for (const auto* L : {&lam_n, &lam_inf})
    for (double l : *L) {
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
  // the sum cancels at rounding level when sums of squares agree; tolerate that noise floor
  double s2 = 0.0;
  for (double l : lam_inf) s2 += l * l;
  auto cfg = [&](double width) { return QuadratureConfig{1e-15 * s2 * width, 1e-11, 4'000'000}; };
  double t = 1e-3 * lo, acc = integrate(g, 0.0, t, cfg(t)).value;
  while (t < 160.0 * hi) {
    acc += integrate(g, t, 2.0 * t, cfg(t)).value;
    t *= 2.0;
  }
  acc += integrate_to_inf(g, t, cfg(hi)).value;
  return 2.0 * acc;
}

std::vector<double> geometric_chaos_eigenvalues(std::size_t K) {
  const double s = (1.0 - std::pow(4.0, -static_cast<double>(K))) / 3.0;
  const double c = std::sqrt(0.5 / s);
  std::vector<double> lam(K);
  for (std::size_t k = 0; k < K; ++k) lam[k] = c * std::ldexp(1.0, -static_cast<int>(k + 1));
  return lam;
}

std::vector<double> truncate_rescaled(const std::vector<double>& lam, std::size_t n) {
  n = std::min(n, lam.size());
  double all = 0, head = 0;
  for (std::size_t k = 0; k < lam.size(); ++k) {
    all += lam[k] * lam[k];
    if (k < n) head += lam[k] * lam[k];
  }
  std::vector<double> out(lam.begin(), lam.begin() + n);
  const double s = std::sqrt(all / head);
  for (double& l : out) l *= s;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = n > 1 ? lo + (hi - lo) * i / (n - 1) : lo;
  return g;
}

RateTable pareto_to_stable_experiment(double alpha, const std::vector<double>& n_grid,
                                      const std::vector<double>& x_grid, const FourierDiffConfig& fd) {
  if (n_grid.empty()) throw Error(ErrorKind::ConfigInvalid, "pareto_to_stable_experiment: empty n grid");
  IDLaw par = make_law("idpareto", {{"alpha", alpha}});
  auto phi1 = par.charfn_closed;
  RateTable tab;
  tab.predicted = -(2.0 / alpha - 1.0);
  CharFn target = [alpha](double t) { return cd(std::exp(-std::pow(std::abs(t), alpha))); };
  for (double n : n_grid) {
    const double scale = std::pow(n, -1.0 / alpha);
    CharFn phin = [&](double t) -> cd {
      double v = std::real(phi1(t * scale));
      if (!(v > 0)) throw Error(ErrorKind::NearZeroModulus, "Pareto charfn not positive at " + std::to_string(t));
      return std::exp(n * std::log(v));
    };
    DistanceResult d = kolmogorov_distance_fourier(phin, target, x_grid, fd);
    tab.rows.push_back({n, d.value, d.grid_error});
  }
  std::vector<double> xs, ys;
  for (auto& row : tab.rows) {
    xs.push_back(row.n);
    ys.push_back(row.dK);
  }
  tab.slope = tab.rows.size() > 1 ? loglog_slope(xs, ys) : std::nan("");
  return tab;
}

}  // namespace levystein
