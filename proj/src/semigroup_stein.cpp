#include "levystein/semigroup_stein.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "levystein/report.hpp"

namespace levystein {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Uniform grid z_m = (m - N/2) dz; 8-point Lagrange, 0 when the stencil leaves the grid.
double lagrange8(const std::vector<double>& g, double dz, double z) {
  const std::size_t N = g.size();
  const double p = z / dz + static_cast<double>(N / 2);
  const double fl = std::floor(p);
  const long i = static_cast<long>(fl);
  if (i - 3 < 0 || i + 4 >= static_cast<long>(N)) return 0.0;
  if (p == fl) return g[i];
  double acc = 0.0;
  for (int j = -3; j <= 4; ++j) {
    double w = 1.0;
    for (int k = -3; k <= 4; ++k)
      if (k != j) w *= (p - (fl + k)) / (j - k);
    acc += w * g[i + j];
  }
  return acc;
}

// Inverse transform of spec(xi) on the grid: out[m] = (1/2pi) int spec(xi) e^{i xi z_m} dxi.
class GridFft {
 public:
  GridFft(std::size_t N, double dz) : N_(N), dz_(dz), dxi_(2 * kPi / (N * dz)) {
    if (N % 4 != 0 || N < 64) throw Error(ErrorKind::ConfigInvalid, "FFT size must be a multiple of 4, >= 64");
    in_ = fftw_alloc_complex(N);
    out_ = fftw_alloc_complex(N);
    plan_ = fftw_plan_dft_1d(static_cast<int>(N), in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~GridFft() {
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  GridFft(const GridFft&) = delete;
  GridFft& operator=(const GridFft&) = delete;

  double xi(std::size_t k) const { return (static_cast<double>(k) - static_cast<double>(N_ / 2)) * dxi_; }
  double nyquist() const { return kPi / dz_; }

  std::vector<double> run(const std::vector<cd>& spec) {
    for (std::size_t k = 0; k < N_; ++k) {
      cd v = (k % 2 ? -1.0 : 1.0) * spec[k];
      in_[k][0] = v.real();
      in_[k][1] = v.imag();
    }
    fftw_execute(plan_);
    std::vector<double> g(N_);
    const double s = dxi_ / (2 * kPi);
    for (std::size_t m = 0; m < N_; ++m) g[m] = (m % 2 ? -s : s) * out_[m][0];
    return g;
  }

 private:
  std::size_t N_;
  double dz_, dxi_;
  fftw_complex *in_, *out_;
  fftw_plan plan_;
};

double fourier_integral(const std::function<cd(double)>& G, double cutoff, const QuadratureConfig& cfg) {
  // (1/2pi) int_R G for Hermitian G
  const double panel = 2.0;
  double acc = 0.0;
  for (double a = 0.0; a < cutoff; a += panel) {
    const double b = std::min(cutoff, a + panel);
    acc += integrate([&](double xi) { return G(xi).real(); }, a, b, cfg).value;
  }
  return acc / kPi;
}

void require_transform(const TestFunction& h, const char* who) {
  if (!h.fourier || !(h.fourier_cutoff > 0))
    throw Error(ErrorKind::Unavailable, std::string(who) + ": test function has no closed-form transform");
}

bool is_constant(const TestFunction& h) { return h.lip_bound == 0.0 && h.d2_bound == 0.0; }

}  // namespace

// ---------------------------------------------------------------------------

cd SemigroupTarget::ratio(double xi, double t) const {
  if (t == 0.0 || xi == 0.0) return 1.0;
  return std::exp(law.log_charfn(xi) - law.log_charfn(std::exp(-t) * xi));
}

std::function<double(double)> SemigroupTarget::mu_t_levy(double t) const {
  if (!law.triplet || !law.triplet->nu.k_function) return {};
  auto k = law.triplet->nu.k_function;
  const double et = std::exp(t);
  return [k, et](double u) { return u == 0.0 ? 0.0 : (k(u) - k(et * u)) / std::abs(u); };
}

double SemigroupTarget::expect(const TestFunction& h) const {
  if (is_constant(h)) return h(0.0);
  require_transform(h, "expect");
  return fourier_integral([&](double xi) { return h.fourier(xi) * law.charfn(xi); }, h.fourier_cutoff,
                          {1e-13, 1e-11, 2'000'000});
}

double SemigroupTarget::w1_mu_t(double t, std::size_t N, double dz) const {
  GridFft fft(N, dz);
  const double Xi = fft.nyquist();
  std::vector<cd> spec(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double xi = fft.xi(k);
    if (xi == 0.0) {
      spec[k] = mean * std::exp(-t);  // int (F_{mu_t} - F_X) = E X - E Y_t
      continue;
    }
    const double s = kPi * xi / Xi;
    const double sigma = std::sin(s) / s;  // Lanczos damping
    spec[k] = sigma * (ratio(-xi, t) - law.charfn(-xi)) / cd(0.0, xi);
  }
  std::vector<double> D = fft.run(spec);
  double acc = 0.0;
  for (double d : D) acc += std::abs(d);
  return acc * dz;
}

SemigroupTarget make_semigroup_target(const IDLaw& law) {
  if (!law.self_decomposable) throw Error(ErrorKind::AssumptionViolated, law.name + " is not self-decomposable");
  if (!law.mean_finite) throw Error(ErrorKind::InfiniteMean, law.name + ": E|X| is infinite");
  if (!law.exponent && !law.triplet) throw Error(ErrorKind::Unavailable, law.name + ": no Lévy exponent");
  return SemigroupTarget{law, mean_of(law)};
}

// ---------------------------------------------------------------------------

double pt_apply(const SemigroupTarget& target, const TestFunction& h, double x, double t,
                const QuadratureConfig& cfg) {
  if (t < 0) throw Error(ErrorKind::DomainError, "pt_apply: negative time");
  if (is_constant(h)) return h(0.0);
  if (!h.fourier) return pt_apply_mc(target, h, x, t, 100000, 1).estimate;
  const double z = x * std::exp(-t);
  return fourier_integral([&](double xi) { return h.fourier(xi) * target.ratio(xi, t) * std::exp(cd(0.0, xi * z)); },
                          h.fourier_cutoff, cfg);
}

TestFunction pt_function(const SemigroupTarget& target, const TestFunction& h, double t) {
  require_transform(h, "pt_function");
  const double et = std::exp(t);
  auto G = [target, h, t, et](double eta) { return et * h.fourier(et * eta) * target.ratio(et * eta, t); };
  const double cut = h.fourier_cutoff / et;
  const QuadratureConfig q{1e-13, 1e-11, 2'000'000};
  TestFunction p;
  p.name = "P_" + std::to_string(t) + "[" + h.name + "]";
  p.f = [G, cut, q](double x) { return fourier_integral([&](double e) { return G(e) * std::exp(cd(0.0, e * x)); }, cut, q); };
  p.d1 = [G, cut, q](double x) {
    return fourier_integral([&](double e) { return cd(0.0, e) * G(e) * std::exp(cd(0.0, e * x)); }, cut, q);
  };
  p.d2 = [G, cut, q](double x) {
    return fourier_integral([&](double e) { return -e * e * G(e) * std::exp(cd(0.0, e * x)); }, cut, q);
  };
  p.fourier = G;
  p.fourier_cutoff = cut;
  // P_t is a contraction and d/dx P_t h = e^{-t} P_t h'
  p.sup_bound = h.sup_bound;
  p.lip_bound = h.lip_bound / et;
  p.d2_bound = h.d2_bound / (et * et);
  return p;
}

// ---------------------------------------------------------------------------

MuTSampler::MuTSampler(const SemigroupTarget& target, double t) {
  if (!(t > 0)) throw Error(ErrorKind::DomainError, "MuTSampler: t must be positive");
  const IDLaw& law = target.law;
  if (!law.triplet || !law.triplet->nu.k_function)
    throw Error(ErrorKind::NoMuTSampler, law.name + ": no k-function, mu_t has no compound Poisson form");
  const LevyTriplet& tr = *law.triplet;
  const auto& k = tr.nu.k_function;
  for (int s : {+1, -1}) {
    if (!tr.nu.side(s).present()) continue;
    const double a = k(s * 1e-150), b = k(s * 1e-100);
    if (!std::isfinite(a) || a > 1.001 * b + 1e-300)
      throw Error(ErrorKind::NoMuTSampler, law.name + ": k is unbounded at 0, mu_t has infinite Lévy mass");
  }
  auto dens = target.mu_t_levy(t);
  TabulatedSpec spec;
  spec.density = [dens](int side, double v) { return std::max(0.0, dens(side * v)); };
  spec.plus = tr.nu.plus;
  spec.minus = tr.nu.minus;
  spec.normalizer = 1.0;
  // k(u) - k(e^t u) cancels near 0; tolerances below that noise floor cannot be met
  jumps_ = TabulatedLaw(spec, {1e-9, 1e-9, 2'000'000});
  rate_ = jumps_.total_mass();
  drift_ = convert_representation(tr, Representation::Drift) * (1.0 - std::exp(-t));
  sd_ = std::sqrt(tr.sigma2 * (1.0 - std::exp(-2 * t)));
}

double MuTSampler::draw(RandomStream& r) const {
  double y = drift_;
  if (rate_ > 0) {
    std::poisson_distribution<long> pois(rate_);
    const long n = pois(r);
    for (long i = 0; i < n; ++i) y += jumps_.draw(r);
  }
  if (sd_ > 0) y += sd_ * std::normal_distribution<double>()(r);
  return y;
}

Estimate pt_apply_mc(const SemigroupTarget& target, const TestFunction& h, double x, double t, std::size_t n,
                     std::uint64_t seed) {
  if (t == 0.0) return {h(x), 0.0, n};
  MuTSampler s(target, t);
  const double z = x * std::exp(-t);
  return mc_mean(n, seed, [&](RandomStream& r) { return h(z + s.draw(r)); });
}

double generator_apply(const SemigroupTarget& target, const TestFunction& f, double x, const QuadratureConfig& cfg) {
  if (!f.d1) throw Error(ErrorKind::MissingDerivative, "generator_apply: f' required");
  const LevyTriplet& tr = target.law.require_triplet();
  double v = (target.mean - x) * f.d1(x) + jump_term(tr.nu, f.d1, f.d2, {}, x, true, cfg);
  if (tr.sigma2 != 0.0) v += tr.sigma2 * f.second_derivative(x);
  return v;
}

// ---------------------------------------------------------------------------

double SteinSolution::table(const std::vector<double>& F, double x) const { return lagrange8(F, dz_, x); }

double SteinSolution::outside(int order, double x) const {
  const auto& g = order == 1 ? tab_->g1 : tab_->g2;
  double acc = 0.0;
  for (std::size_t i = 0; i < tab_->nodes.size(); ++i) {
    const auto& nd = tab_->nodes[i];
    const double z = x * std::exp(-nd.t);
    if (std::abs(z) > half_) continue;
    acc -= nd.w * std::exp(-order * nd.t) * lagrange8(g[i], dz_, z);
  }
  return acc;
}

double SteinSolution::f(double x) const {
  if (zero_) return 0.0;
  if (std::abs(x) <= half_) return table(tab_->F0, x);
  const double edge = x > 0 ? half_ : -half_;
  const double base = table(tab_->F0, edge);
  auto fp = [this](double y) { return f_prime(y); };
  return base + (x > 0 ? 1.0 : -1.0) * integrate(fp, std::min(edge, x), std::max(edge, x)).value;
}

double SteinSolution::f_prime(double x) const {
  if (zero_) return 0.0;
  return std::abs(x) <= half_ ? table(tab_->F1, x) : outside(1, x);
}

double SteinSolution::f_second(double x) const {
  if (zero_) return 0.0;
  return std::abs(x) <= half_ ? table(tab_->F2, x) : outside(2, x);
}

double SteinSolution::f_prime_sup() const {
  if (zero_) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < N_; ++i) {
    const double z = (static_cast<double>(i) - static_cast<double>(N_ / 2)) * dz_;
    if (std::abs(z) <= half_) m = std::max(m, std::abs(tab_->F1[i]));
  }
  return m;
}

void SteinSolution::export_csv(std::ostream& os, const std::vector<double>& grid) const {
  os << "x,f,f_prime,residual\n";
  for (double x : grid) {
    double r = stein_residual(*this, {x});
    os << fmt17(x) << ',' << fmt17(f(x)) << ',' << fmt17(f_prime(x)) << ',' << fmt17(r) << '\n';
  }
}

SteinSolution solve_stein(const SemigroupTarget& target, const TestFunction& h, const SteinConfig& cfg) {
  SteinSolution sol;
  sol.target = target;
  sol.h = h;
  sol.N_ = cfg.N;
  sol.dz_ = cfg.dz;
  sol.half_ = 0.9 * static_cast<double>(cfg.N / 2) * cfg.dz;
  if (is_constant(h)) {
    sol.zero_ = true;
    sol.Eh = h(0.0);
    return sol;
  }
  require_transform(h, "solve_stein");
  GridFft fft(cfg.N, cfg.dz);
  if (h.fourier_cutoff > fft.nyquist())
    throw Error(ErrorKind::GridTooCoarse, "solve_stein: transform cutoff exceeds the grid Nyquist frequency");
  sol.Eh = target.expect(h);

  // constant of the e^{-t/3} tail: W1(mu_1, mu_X) inflated by 3
  const double C = 3.0 * target.w1_mu_t(1.0);
  sol.C_est = C;
  double T = C > 0 ? 3.0 * std::log(3.0 * C / cfg.tail_tol) : cfg.t0;
  T = std::max(T, cfg.t0);
  if (T > cfg.T_cap)
    throw Error(ErrorKind::TailBudgetExceeded, "solve_stein: time truncation " + std::to_string(T) + " exceeds cap");

  auto tab = std::make_shared<SteinSolution::Tables>();
  const Rule& gl = gauss_legendre(8);
  auto add_interval = [&](double a, double b) {
    for (std::size_t i = 0; i < gl.x.size(); ++i)
      tab->nodes.push_back({0.5 * (a + b) + 0.5 * (b - a) * gl.x[i], 0.5 * (b - a) * gl.w[i]});
  };
  add_interval(0.0, cfg.t0);
  double a = cfg.t0;
  while (a < T) {
    add_interval(a, a * cfg.ratio);
    a *= cfg.ratio;
  }
  sol.time_truncation = a;
  sol.tail_bound = 3.0 * C * std::exp(-a / 3.0);

  const std::size_t N = cfg.N;
  tab->F0.assign(N, 0.0);
  tab->F1.assign(N, 0.0);
  tab->F2.assign(N, 0.0);
  std::vector<cd> s0(N), s1(N), s2(N);
  for (const auto& nd : tab->nodes) {
    for (std::size_t k = 0; k < N; ++k) {
      const double xi = fft.xi(k);
      cd G = std::abs(xi) <= h.fourier_cutoff ? h.fourier(xi) * target.ratio(xi, nd.t) : cd(0.0);
      s0[k] = G;
      s1[k] = cd(0.0, xi) * G;
      s2[k] = -xi * xi * G;
    }
    std::vector<double> g0 = fft.run(s0), g1 = fft.run(s1), g2 = fft.run(s2);
    const double e1 = std::exp(-nd.t), e2 = e1 * e1;
    for (std::size_t m = 0; m < N; ++m) {
      const double z = (static_cast<double>(m) - static_cast<double>(N / 2)) * cfg.dz;
      if (std::abs(z) > sol.half_) continue;
      const double zz = z * e1;
      tab->F0[m] -= nd.w * (lagrange8(g0, cfg.dz, zz) - sol.Eh);
      tab->F1[m] -= nd.w * e1 * lagrange8(g1, cfg.dz, zz);
      tab->F2[m] -= nd.w * e2 * lagrange8(g2, cfg.dz, zz);
    }
    tab->g1.push_back(std::move(g1));
    tab->g2.push_back(std::move(g2));
  }
  sol.tab_ = tab;
  return sol;
}

double stein_residual(const SteinSolution& sol, const std::vector<double>& grid, const QuadratureConfig& cfg) {
  if (grid.empty()) throw Error(ErrorKind::GridTooCoarse, "stein_residual: empty grid");
  const LevyTriplet& tr = sol.target.law.require_triplet();
  auto fp = [&sol](double y) { return sol.f_prime(y); };
  auto fpp = [&sol](double y) { return sol.f_second(y); };
  double worst = 0.0;
  for (double x : grid) {
    double r = (sol.target.mean - x) * sol.f_prime(x) + jump_term(tr.nu, fp, fpp, {}, x, true, cfg) - sol.h(x) +
               sol.Eh;
    if (tr.sigma2 != 0.0) r += tr.sigma2 * sol.f_second(x);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

// ---------------------------------------------------------------------------

double kernel_K(const LevyMeasure& nu, double t, double N) {
  if (!(N > 0)) throw Error(ErrorKind::DomainError, "kernel_K: N must be positive");
  if (std::abs(t) > N) return 0.0;
  if (t > 0) return std::max(0.0, nu.tail_plus(t) - nu.tail_plus(N));
  if (t < 0) return std::max(0.0, nu.tail_minus(t) - nu.tail_minus(-N));
  return nu.integrate([](double u) { return std::abs(u); }, 0.0, N);  // may be +inf
}

double kernel_K_stable(double alpha, double c1, double c2, double t, double N) {
  if (std::abs(t) > N) return 0.0;
  auto part = [&](double c, double s) {
    if (alpha == 1.0) return c * std::log(N / s);
    return c * (std::pow(s, 1 - alpha) - std::pow(N, 1 - alpha)) / (alpha - 1);
  };
  return t >= 0 ? part(c1, t) : part(c2, -t);
}

double kernel_K_stable_alt(double alpha, double c1, double c2, double t, double N) {
  if (std::abs(t) > N) return 0.0;
  if (t >= 0) return c1 * (std::pow(t, alpha - 1) - std::pow(N, alpha - 1)) / (alpha - 1);
  return c2 * (std::pow(-t, 1 - alpha) - std::pow(N, 1 - alpha)) / (alpha - 1);
}

double kernel_integral(const LevyMeasure& nu, double N) {
  QuadratureConfig q{1e-14, 1e-11, 4'000'000};
  double acc = 0.0;
  if (nu.plus.present() || std::any_of(nu.atoms.begin(), nu.atoms.end(), [](const Atom& a) { return a.location > 0; }))
    acc += integrate_to_zero([&](double t) { return kernel_K(nu, t, N); }, N, q).value;
  if (nu.minus.present() || std::any_of(nu.atoms.begin(), nu.atoms.end(), [](const Atom& a) { return a.location < 0; }))
    acc += integrate_to_zero([&](double s) { return kernel_K(nu, -s, N); }, N, q).value;
  return acc;
}

HolderResult holder_exponent(const LevyMeasure& nu) {
  HolderResult r;
  if (std::isfinite(nu.abs_moment_small())) {
    r.lipschitz = true;
    r.exponent = 1.0;
    return r;
  }
  auto tail = [&](double R) {
    double v = 0.0;
    if (nu.plus.present()) v += nu.tail_plus(R);
    if (nu.minus.present()) v += nu.tail_minus(-R);
    return v;
  };
  auto small = [&](double R) { return nu.integrate([](double u) { return u * u; }, -R, R); };
  std::vector<double> Rt, Vt, Rs, Vs;
  for (int j = 0; j <= 12; ++j) {
    Rt.push_back(10.0 * std::pow(10.0, j / 4.0));
    Vt.push_back(tail(Rt.back()));
    Rs.push_back(1e-4 * std::pow(10.0, j / 4.0));
    Vs.push_back(small(Rs.back()));
  }
  r.gamma = -loglog_slope(Rt, Vt);
  r.beta = loglog_slope(Rs, Vs);
  if (!(r.gamma > 0) || !(r.beta > 0) || !std::isfinite(r.gamma) || !std::isfinite(r.beta))
    throw Error(ErrorKind::FitFailure, "holder_exponent: tail or small-ball power law not positive");
  // constants as sups over a log grid spanning both regimes
  for (int j = -24; j <= 24; ++j) {
    const double R = std::pow(10.0, j / 6.0);
    r.C1 = std::max(r.C1, tail(R) * std::pow(R, r.gamma));
    r.C2 = std::max(r.C2, small(R) / std::pow(R, r.beta));
  }
  r.exponent = r.beta / (r.beta + r.gamma);
  return r;
}

}  // namespace levystein
