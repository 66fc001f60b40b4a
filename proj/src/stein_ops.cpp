#include "levystein/stein_ops.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "levystein/tabulated_law.hpp"

namespace levystein {

namespace {

double param(const IDLaw& law, const char* key) { return law.params.at(key).get<double>(); }

QuadratureConfig tight(const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-13);
  return c;
}

// Second derivative from the supplied one, else a central difference.
double second_diff(const TestFunction& f, double x) {
  if (f.d2) return f.d2(x);
  if (f.d1) {
    const double h = 1e-5;
    return (f.d1(x + h) - f.d1(x - h)) / (2 * h);
  }
  const double h = 1e-3;
  return (f.f(x + h) + f.f(x - h) - 2 * f.f(x)) / (h * h);
}

// Marchaud integral over (0, inf) of (f(x) - f(x - s u)) u^{-1-beta}; s = +1 for D+, -1 for D-.
double marchaud_core(const TestFunction& f, double x, double beta, int s, const QuadratureConfig& cfg) {
  if (!(beta > 0 && beta < 1)) throw Error(ErrorKind::DomainError, "Marchaud order must lie in (0,1)");
  const QuadratureConfig c = tight(cfg);
  double near;
  if (f.d1) {
    // int_0^1 (f(x) - f(x - s u)) u^{-1-beta} du = s int_0^1 f'(x - s w) (w^{-beta} - 1)/beta dw
    auto g = [&](double w) { return f.d1(x - s * w) * (std::pow(w, -beta) - 1.0) / beta; };
    near = s * integrate_to_zero(g, 1.0, c).value;
  } else {
    const double d = 1e-9;
    const double fx = f.f(x);
    auto g = [&](double u) { return (fx - f.f(x - s * u)) * std::pow(u, -1.0 - beta); };
    near = integrate(g, d, 1.0, c).value + (fx - f.f(x - s * d)) / d * std::pow(d, 1.0 - beta) / (1.0 - beta);
  }
  const double tail = f.f(x) / beta - power_tail(f.f, x, -s, [beta](double u) { return std::pow(u, -1.0 - beta); },
                                                 1.0 + beta, cfg);
  return beta / std::tgamma(1.0 - beta) * (near + tail);
}

struct JumpSamplers {
  double q = 0.0, m = 0.0;
  TabulatedLaw U, V;
};

JumpSamplers jump_samplers(const LevyMeasure& nu) {
  JumpSamplers js;
  if (!nu.density) return js;
  std::vector<double> bp, bm;
  for (double b : nu.breakpoints) (b > 0 ? bp : bm).push_back(std::abs(b));
  auto dens = nu.density;
  for (int s : {+1, -1}) {
    js.q += nu.integrate_side([](double v) { return v * v; }, s, 0.0, 1.0);
    js.m += nu.integrate_side([](double v) { return v; }, s, 1.0, kInf);
  }
  if (js.q > 0) {
    TabulatedSpec sp;
    sp.density = [dens](int s, double v) { return v <= 1.0 ? v * v * dens(s * v) : 0.0; };
    for (int s : {+1, -1}) {
      SideShape sh = nu.side(s);
      if (!sh.present() || sh.lo >= 1.0) sh = SideShape{};
      else sh.hi = std::min(sh.hi, 1.0);
      (s > 0 ? sp.plus : sp.minus) = sh;
    }
    sp.breaks_plus = bp;
    sp.breaks_minus = bm;
    sp.normalizer = js.q;
    js.U = TabulatedLaw(sp);
  }
  if (js.m > 0) {
    TabulatedSpec sp;
    sp.density = [dens](int s, double v) { return v > 1.0 ? v * dens(s * v) : 0.0; };
    for (int s : {+1, -1}) {
      SideShape sh = nu.side(s);
      if (!sh.present() || sh.hi <= 1.0) sh = SideShape{};
      else sh.lo = std::max(sh.lo, 1.0);
      (s > 0 ? sp.plus : sp.minus) = sh;
    }
    sp.breaks_plus = bp;
    sp.breaks_minus = bm;
    sp.normalizer = js.m;
    js.V = TabulatedLaw(sp);
  }
  return js;
}

// (f(x+u) - f(x))/u, switching to the derivative where rounding would dominate
double slope(const TestFunction& f, double x, double fx, double u) {
  if (std::abs(u) < 1e-7 && f.d1) return f.d1(x);
  return (f.f(x + u) - fx) / u;
}

struct Accum {
  std::vector<double> s, ss;
  explicit Accum(std::size_t k = 0) : s(k, 0.0), ss(k, 0.0) {}
};

std::vector<Estimate> finish(const std::vector<Accum>& blocks, std::size_t k, std::size_t n) {
  std::vector<Estimate> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    double S = 0, SS = 0;
    for (const auto& b : blocks) {
      S += b.s[j];
      SS += b.ss[j];
    }
    const double mean = S / n;
    const double var = n > 1 ? std::max(0.0, (SS - S * mean) / (n - 1)) : 0.0;
    out[j] = {mean, std::sqrt(var / n), n};
  }
  return out;
}

std::vector<Estimate> run_mc(std::size_t n, std::uint64_t seed, std::size_t k,
                             const std::function<void(RandomStream&, std::vector<double>&)>& body) {
  if (n == 0) throw Error(ErrorKind::DomainError, "Monte Carlo size must be positive");
  const std::size_t nb = (n + kSampleBlock - 1) / kSampleBlock;
  std::vector<Accum> blocks(nb, Accum(k));
  for_blocks(n, kSampleBlock, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    RandomStream rng(seed, b);
    std::vector<double> terms(k);
    Accum& acc = blocks[b];
    for (std::size_t i = lo; i < hi; ++i) {
      body(rng, terms);
      for (std::size_t j = 0; j < k; ++j) {
        acc.s[j] += terms[j];
        acc.ss[j] += terms[j] * terms[j];
      }
    }
  });
  return finish(blocks, k, n);
}

}  // namespace

double power_tail(const std::function<double(double)>& F, double x, int s, const std::function<double(double)>& w,
                  double p, const QuadratureConfig& cfg) {
  if (!(p > 1.0)) throw Error(ErrorKind::DomainError, "power_tail needs decay exponent > 1");
  QuadratureConfig c = cfg;
  c.abs_tol = std::max(1e-300, std::min(cfg.abs_tol, 1e-13) * 0.1);
  constexpr int K = 17;
  double total = 0.0;
  for (int k = 0; k < K; ++k) {
    const double a = std::ldexp(1.0, k), b = 2 * a;
    total += integrate([&](double v) { return F(x + s * v) * w(v); }, a, b, c).value;
  }
  const double V = std::ldexp(1.0, K);
  QuadratureConfig cm = cfg;
  cm.abs_tol = 1e-9 * V;
  const double mean = integrate([&](double v) { return F(x + s * v); }, V, 2 * V, cm).value / V;
  return total + mean * w(V) * V / (p - 1.0);
}

double jump_term(const LevyMeasure& nu, const std::function<double(double)>& F, const std::function<double(double)>& dF,
                 const std::function<double(double)>& d2F, double x, bool compensate_all, const QuadratureConfig& cfg) {
  double val = 0.0;
  const double Fx = F(x);
  for (const Atom& a : nu.atoms) {
    const double comp = (compensate_all || std::abs(a.location) <= 1.0) ? Fx : 0.0;
    val += (F(x + a.location) - comp) * a.location * a.mass;
  }
  if (!nu.density) return val;
  for (int s : {+1, -1}) {
    const SideShape& sh = nu.side(s);
    if (!sh.present()) continue;
    double a0 = 0.0;
    if (sh.lo == 0.0 && sh.zero_index > 0.0 && dF) {
      const double cut = std::min(kTaylorCut, sh.hi);
      const double M2 = nu.integrate_side([](double v) { return v * v; }, s, 0.0, cut, cfg);
      val += dF(x) * M2;
      if (d2F) val += 0.5 * s * d2F(x) * nu.integrate_side([](double v) { return v * v * v; }, s, 0.0, cut, cfg);
      a0 = cut;
    }
    val += nu.integrate_side([&](double v) { return (F(x + s * v) - Fx) * s * v; }, s, a0, 1.0, cfg);
    if (sh.hi <= 1.0) continue;
    if (sh.tail == TailKind::Power && std::isinf(sh.hi)) {
      auto w = [&](double v) { return v * nu.density(s * v); };
      val += s * power_tail(F, x, s, w, sh.tail_index, cfg);
      if (compensate_all) val -= s * Fx * nu.integrate_side([](double v) { return v; }, s, 1.0, kInf, cfg);
    } else {
      const double comp = compensate_all ? Fx : 0.0;
      val += nu.integrate_side([&](double v) { return (F(x + s * v) - comp) * s * v; }, s, 1.0, kInf, cfg);
    }
  }
  return val;
}

double apply_Agen(const TestFunction& f, double x, const IDLaw& law, const QuadratureConfig& cfg) {
  const LevyTriplet& tr = law.require_triplet();
  if (!std::isfinite(tr.nu.abs_moment_tail(cfg)))
    throw Error(ErrorKind::InfiniteMean, law.name + ": the operator needs a finite first moment");
  double val = (x - tr.b) * f.f(x);
  if (tr.sigma2 > 0.0) val -= tr.sigma2 * f.derivative(x);
  val -= jump_term(tr.nu, f.f, f.d1, f.d2, x, false, cfg);
  return val;
}

double specialized_operator(const TestFunction& f, double x, const IDLaw& law, const QuadratureConfig& cfg) {
  const QuadratureConfig c = tight(cfg);
  const std::string& nm = law.name;
  const double fx = f.f(x);
  if (nm == "poisson") return x * fx - param(law, "lambda") * f.f(x + 1.0);
  if (nm == "nbin0" || nm == "nbin") {
    const double r = param(law, "r"), q = 1.0 - param(law, "p");
    double s = 0.0, qk = q;
    for (int k = 1; qk > 1e-20; ++k, qk *= q) s += f.f(x + k) * qk;
    return (nm == "nbin" ? x - 1.0 : x) * fx - r * s;
  }
  if (nm == "cp") {
    const double rate = param(law, "rate"), lo = param(law, "lo"), hi = param(law, "hi");
    return x * fx - rate / (hi - lo) * integrate([&](double u) { return f.f(x + u) * u; }, lo, hi, c).value;
  }
  if (nm == "laplace") {
    auto g = [&](double u) { return (f.f(x + u) - f.f(x - u)) * std::exp(-u); };
    return x * fx - integrate(g, 0.0, 1.0, c).value - integrate_to_inf(g, 1.0, c).value;
  }
  if (nm == "gamma") {
    const double a = param(law, "alpha"), b = param(law, "beta");
    auto g = [&](double u) { return (f.f(x + u) - (u <= 1.0 ? fx : 0.0)) * std::exp(-b * u); };
    const double I = integrate(g, 0.0, 1.0, c).value + integrate_to_inf(g, 1.0, c).value;
    return x * fx - a * (-std::expm1(-b)) / b * fx - a * I;
  }
  if (nm == "stable" || nm == "sas") {
    const double alpha = param(law, "alpha");
    const double c1 = nm == "sas" ? param(law, "c") : param(law, "c1");
    const double c2 = nm == "sas" ? c1 : param(law, "c2");
    const StableConstants k = stable_constants(alpha, c1, c2);
    const double beta = alpha - 1.0;
    return x * fx - (k.c2_alpha * marchaud_plus(f, x, beta, cfg) - k.c1_alpha * marchaud_minus(f, x, beta, cfg) +
                     (c1 - c2) / (alpha - 1.0) * fx);
  }
  throw Error(ErrorKind::Unavailable, nm + ": no specialised operator");
}

double marchaud_plus(const TestFunction& f, double x, double beta, const QuadratureConfig& cfg) {
  return marchaud_core(f, x, beta, +1, cfg);
}

double marchaud_minus(const TestFunction& f, double x, double beta, const QuadratureConfig& cfg) {
  return marchaud_core(f, x, beta, -1, cfg);
}

double fractional_laplacian(const TestFunction& f, double x, double alpha, const QuadratureConfig& cfg) {
  const double d = stable_constants(alpha, 1.0, 1.0).d_alpha;
  const QuadratureConfig c = tight(cfg);
  const double fx = f.f(x), cut = 1e-4;
  const double near_taylor = second_diff(f, x) * std::pow(cut, 2.0 - alpha) / (2.0 - alpha);
  auto g = [&](double u) { return (f.f(x + u) + f.f(x - u) - 2 * fx) * std::pow(u, -1.0 - alpha); };
  const double near = near_taylor + integrate(g, cut, 1.0, c).value;
  auto w = [alpha](double u) { return std::pow(u, -1.0 - alpha); };
  const double tail = power_tail(f.f, x, +1, w, 1.0 + alpha, cfg) + power_tail(f.f, x, -1, w, 1.0 + alpha, cfg) -
                      2.0 * fx / alpha;
  return d * (near + tail);
}

double fractional_laplacian_derivative_form(const TestFunction& f, double x, double alpha,
                                            const QuadratureConfig& cfg) {
  if (!f.d1) throw Error(ErrorKind::MissingDerivative, f.name + ": derivative form needs f'");
  const double d = stable_constants(alpha, 1.0, 1.0).d_alpha;
  const QuadratureConfig c = tight(cfg);
  const double cut = kTaylorCut;
  const double near_taylor = 2.0 * second_diff(f, x) * std::pow(cut, 2.0 - alpha) / (2.0 - alpha);
  auto g = [&](double u) { return (f.d1(x + u) - f.d1(x - u)) * std::pow(u, -alpha); };
  const double near = near_taylor + integrate(g, cut, 1.0, c).value;
  auto w = [alpha](double u) { return std::pow(u, -alpha); };
  const double tail = power_tail(f.d1, x, +1, w, alpha, cfg) - power_tail(f.d1, x, -1, w, alpha, cfg);
  return d / alpha * (near + tail);
}

TestFunction derivative_of(const TestFunction& f) {
  if (!f.d1) throw Error(ErrorKind::MissingDerivative, f.name + ": no derivative supplied");
  TestFunction t;
  t.name = f.name + "'";
  t.f = f.d1;
  t.d1 = f.d2;
  t.lip_bound = f.d2_bound;
  t.sup_bound = f.lip_bound;
  return t;
}

std::vector<Estimate> identity_residuals(const IDLaw& law, const std::vector<TestFunction>& fs, std::size_t n,
                                         std::uint64_t seed) {
  const LevyTriplet& tr = law.require_triplet();
  mean_of(law);
  if (!law.draw) throw Error(ErrorKind::Unavailable, law.name + ": no sampler");
  for (const auto& f : fs)
    if (tr.sigma2 > 0 && !f.d1) throw Error(ErrorKind::MissingDerivative, f.name + ": Gaussian part needs f'");
  const JumpSamplers js = jump_samplers(tr.nu);
  const std::size_t k = fs.size();
  const bool cache_atoms = law.lattice && !tr.nu.atoms.empty();

  auto atom_sum = [&](const TestFunction& f, double x, double fx) {
    double s = 0.0;
    for (const Atom& a : tr.nu.atoms)
      s += (f.f(x + a.location) - (std::abs(a.location) <= 1.0 ? fx : 0.0)) * a.location * a.mass;
    return s;
  };

  if (n == 0) throw Error(ErrorKind::DomainError, "Monte Carlo size must be positive");
  const std::size_t nb = (n + kSampleBlock - 1) / kSampleBlock;
  std::vector<Accum> blocks(nb, Accum(k));
  for_blocks(n, kSampleBlock, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    RandomStream rng(seed, b);
    Accum& acc = blocks[b];
    std::vector<std::unordered_map<long, double>> cache(cache_atoms ? k : 0);
    for (std::size_t i = lo; i < hi; ++i) {
      const double x = law.draw(rng);
      const double u = js.q > 0 ? js.U.draw(rng) : 0.0;
      const double v = js.m > 0 ? js.V.draw(rng) : 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const TestFunction& f = fs[j];
        const double fx = f.f(x);
        double J = 0.0;
        if (!tr.nu.atoms.empty()) {
          if (cache_atoms) {
            auto key = std::lround(x);
            auto it = cache[j].find(key);
            if (it == cache[j].end()) it = cache[j].emplace(key, atom_sum(f, x, fx)).first;
            J += it->second;
          } else {
            J += atom_sum(f, x, fx);
          }
        }
        if (js.q > 0) J += js.q * slope(f, x, fx, u);
        if (js.m > 0) J += js.m * (v > 0 ? 1.0 : -1.0) * f.f(x + v);
        double term = (x - tr.b) * fx - J;
        if (tr.sigma2 > 0) term -= tr.sigma2 * f.d1(x);
        acc.s[j] += term;
        acc.ss[j] += term * term;
      }
    }
  });
  return finish(blocks, k, n);
}

Estimate identity_residual(const IDLaw& law, const TestFunction& f, std::size_t n, std::uint64_t seed) {
  return identity_residuals(law, {f}, n, seed).front();
}

Estimate mc_mean(std::size_t n, std::uint64_t seed, const std::function<double(RandomStream&)>& g) {
  return run_mc(n, seed, 1, [&](RandomStream& r, std::vector<double>& t) { t[0] = g(r); }).front();
}

Estimate laplace_exponential_residual(const TestFunction& f, std::size_t n, std::uint64_t seed) {
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = -std::log(r.uniform()) + std::log(r.uniform());
    const double y = -std::log(r.uniform());
    return x * f.f(x) - (f.f(x + y) - f.f(x - y));
  });
}

Estimate stable_identity_residual(double alpha, double c1, double c2, const TestFunction& f, std::size_t n,
                                  std::uint64_t seed) {
  const StableConstants k = stable_constants(alpha, c1, c2);
  const IDLaw law = make_law("stable", {{"alpha", alpha}, {"c1", c1}, {"c2", c2}});
  const double beta = alpha - 1.0, pre = beta / std::tgamma(1.0 - beta);
  const double shift = (c1 - c2) / (alpha - 1.0);
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = law.draw(r);
    const double u = std::pow(r.uniform(), 1.0 / (1.0 - beta));
    const double v = std::pow(r.uniform(), -1.0 / beta);
    const double fx = f.f(x);
    // (f(x) - f(x - u))/u and (f(x) - f(x + u))/u
    const double dp = slope(f, x, fx, -u), dm = -slope(f, x, fx, u);
    const double Dp = pre * (dp / (1.0 - beta) + (fx - f.f(x - v)) / beta);
    const double Dm = pre * (dm / (1.0 - beta) + (fx - f.f(x + v)) / beta);
    return x * fx - k.c2_alpha * Dp + k.c1_alpha * Dm - shift * fx;
  });
}

Estimate fractional_laplacian_residual(double alpha, const TestFunction& f, std::size_t n, std::uint64_t seed) {
  if (!f.d1) throw Error(ErrorKind::MissingDerivative, f.name + ": needs f'");
  const double d = stable_constants(alpha, 1.0, 1.0).d_alpha;
  return mc_mean(n, seed, [&](RandomStream& r) {
    const double x = draw_stable(r, alpha, 1.0, 0.0, 0.0);
    const double u = std::pow(r.uniform(), 1.0 / (2.0 - alpha));
    const double v = std::pow(r.uniform(), -1.0 / alpha);
    const double fx = f.f(x);
    const double sd = u < 1e-4 ? second_diff(f, x) : (f.f(x + u) + f.f(x - u) - 2 * fx) / (u * u);
    const double lap = d * (sd / (2.0 - alpha) + (f.f(x + v) + f.f(x - v) - 2 * fx) / alpha);
    return x * f.d1(x) - alpha * lap;
  });
}

}  // namespace levystein
