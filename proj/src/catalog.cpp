// Catalog of infinitely divisible laws addressed by name.
#include <gsl/gsl_sf_expint.h>

#include <boost/math/special_functions/gamma.hpp>
#include <numbers>
#include <random>
#include <set>

#include "levystein/id_law.hpp"

namespace levystein {

namespace {

using cd = std::complex<double>;
using nlohmann::json;

void check_keys(const std::string& law, const json& p, std::set<std::string> allowed) {
  if (!p.is_object()) throw Error(ErrorKind::ConfigInvalid, law + ": parameters must be a JSON object");
  for (auto it = p.begin(); it != p.end(); ++it)
    if (!allowed.count(it.key())) throw Error(ErrorKind::ConfigInvalid, law + ": unknown parameter '" + it.key() + "'");
}

double num(const std::string& law, const json& p, const char* key, double def) {
  if (!p.contains(key)) return def;
  if (!p[key].is_number()) throw Error(ErrorKind::ConfigInvalid, law + ": parameter '" + key + "' must be a number");
  return p[key].get<double>();
}

void require(bool ok, const std::string& law, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DomainError, law + ": " + what);
}

long draw_poisson(RandomStream& rng, double lambda) {
  if (!(lambda > 0.0)) return 0;
  std::poisson_distribution<long> d(lambda);
  return d(rng);
}

// ---------------------------------------------------------------------------

IDLaw poisson(const json& p) {
  check_keys("poisson", p, {"lambda"});
  const double lam = num("poisson", p, "lambda", 1.0);
  require(lam > 0, "poisson", "lambda must be positive");
  IDLaw law;
  law.name = "poisson";
  law.params = {{"lambda", lam}};
  LevyMeasure nu;
  nu.atoms = {{1.0, lam}};
  law.triplet = LevyTriplet{lam, 0.0, nu};
  law.exponent = [lam](double t) { return lam * cd(std::cos(t) - 1.0, std::sin(t)); };
  law.draw = [lam](RandomStream& r) { return static_cast<double>(draw_poisson(r, lam)); };
  law.lattice = true;
  law.pmf = [lam](long k) {
    return k < 0 ? 0.0 : std::exp(-lam + k * std::log(lam) - std::lgamma(k + 1.0));
  };
  law.mean = lam;
  law.variance = lam;
  return law;
}

IDLaw compound_poisson_uniform(const json& p) {
  check_keys("cp", p, {"rate", "lo", "hi"});
  const double rate = num("cp", p, "rate", 1.0), lo = num("cp", p, "lo", 0.0), hi = num("cp", p, "hi", 1.0);
  require(rate > 0 && hi > lo, "cp", "need rate > 0 and lo < hi");
  IDLaw law;
  law.name = "cp";
  law.params = {{"rate", rate}, {"lo", lo}, {"hi", hi}};
  LevyMeasure nu;
  const double h = rate / (hi - lo);
  nu.density = [lo, hi, h](double u) { return (u >= lo && u <= hi && u != 0.0) ? h : 0.0; };
  if (hi > 0) nu.plus = SideShape{std::max(lo, 0.0), hi, TailKind::Compact, 0.0, -1.0};
  if (lo < 0) nu.minus = SideShape{std::max(-hi, 0.0), -lo, TailKind::Compact, 0.0, -1.0};
  for (double b : {lo, hi})
    if (b != 0.0) nu.breakpoints.push_back(b);
  law.triplet = triplet_from(0.0, Representation::Drift, 0.0, nu);
  const double m = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
  law.exponent = [rate, m, w](double t) {
    double x = t * w;
    double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return rate * (std::exp(cd(0.0, t * m)) * sinc - 1.0);
  };
  law.draw = [rate, lo, hi](RandomStream& r) {
    long n = draw_poisson(r, rate);
    double s = 0.0;
    for (long k = 0; k < n; ++k) s += lo + (hi - lo) * r.uniform();
    return s;
  };
  law.point_masses = {{0.0, std::exp(-rate)}};
  law.mean = rate * m;
  law.variance = rate * (hi * hi * hi - lo * lo * lo) / (3.0 * (hi - lo));
  return law;
}

std::vector<Atom> nbin_atoms(double r, double q) {
  std::vector<Atom> a;
  for (int k = 1; k <= 20000; ++k) {
    double m = r * std::pow(q, k) / k;
    if (m < 1e-19 * r && k > 1) break;
    a.push_back({static_cast<double>(k), m});
  }
  return a;
}

IDLaw negative_binomial(const json& p, bool shifted) {
  const std::string nm = shifted ? "nbin" : "nbin0";
  check_keys(nm, p, {"r", "p"});
  const double r = num(nm, p, "r", 2.0), pp = num(nm, p, "p", 0.5);
  require(r > 0 && pp > 0 && pp < 1, nm, "need r > 0 and 0 < p < 1");
  const double q = 1.0 - pp;
  IDLaw law;
  law.name = nm;
  law.params = {{"r", r}, {"p", pp}};
  LevyMeasure nu;
  nu.atoms = nbin_atoms(r, q);
  nu.abs_moment_small_closed = r * q;
  nu.first_moment_small_closed = r * q;
  nu.abs_moment_tail_closed = r * q * q / pp;
  nu.first_moment_tail_closed = r * q * q / pp;
  nu.second_moment_closed = r * q / (pp * pp);
  nu.second_moment_small_closed = r * q;
  const double shift = shifted ? 1.0 : 0.0;
  law.triplet = LevyTriplet{shift + r * q, 0.0, nu};
  law.exponent = [r, pp, q, shift](double t) {
    return cd(0.0, shift * t) + r * (std::log(pp) - std::log(1.0 - q * std::exp(cd(0.0, t))));
  };
  law.draw = [r, pp, q, shift](RandomStream& rng) {
    std::gamma_distribution<double> g(r, q / pp);
    return shift + static_cast<double>(draw_poisson(rng, g(rng)));
  };
  law.lattice = true;
  law.pmf = [r, pp, q, shift](long k) {
    long j = k - static_cast<long>(shift);
    if (j < 0) return 0.0;
    return std::exp(std::lgamma(r + j) - std::lgamma(r) - std::lgamma(j + 1.0) + r * std::log(pp) + j * std::log(q));
  };
  law.mean = shift + r * q / pp;
  law.variance = r * q / (pp * pp);
  return law;
}

IDLaw gamma_law(const json& p) {
  check_keys("gamma", p, {"alpha", "beta"});
  const double a = num("gamma", p, "alpha", 2.0), b = num("gamma", p, "beta", 1.0);
  require(a > 0 && b > 0, "gamma", "need alpha, beta > 0");
  IDLaw law;
  law.name = "gamma";
  law.params = {{"alpha", a}, {"beta", b}};
  LevyMeasure nu;
  nu.density = [a, b](double u) { return u > 0 ? a * std::exp(-b * u) / u : 0.0; };
  nu.plus = SideShape{0.0, kInf, TailKind::Exponential, 0.0, 0.0};
  nu.tail_plus_closed = [a, b](double v) { return a * std::exp(-b * v) / b; };
  nu.tail_minus_closed = [](double) { return 0.0; };
  nu.abs_moment_small_closed = a * -std::expm1(-b) / b;
  nu.first_moment_small_closed = *nu.abs_moment_small_closed;
  nu.abs_moment_tail_closed = a * std::exp(-b) / b;
  nu.first_moment_tail_closed = *nu.abs_moment_tail_closed;
  nu.second_moment_closed = a / (b * b);
  nu.second_moment_small_closed = a * (1.0 - std::exp(-b) * (1.0 + b)) / (b * b);
  nu.k_function = [a, b](double u) { return u > 0 ? a * std::exp(-b * u) : 0.0; };
  law.triplet = LevyTriplet{*nu.first_moment_small_closed, 0.0, nu};
  law.exponent = [a, b](double t) { return -a * std::log(cd(1.0, -t / b)); };
  law.draw = [a, b](RandomStream& r) {
    std::gamma_distribution<double> g(a, 1.0 / b);
    return g(r);
  };
  law.density = [a, b](double x) {
    return x > 0 ? std::exp(a * std::log(b) + (a - 1) * std::log(x) - b * x - std::lgamma(a)) : 0.0;
  };
  law.cdf = [a, b](double x) { return x > 0 ? boost::math::gamma_p(a, b * x) : 0.0; };
  law.mean = a / b;
  law.variance = a / (b * b);
  law.self_decomposable = true;
  law.density_sup = a < 1 ? kInf : (a == 1 ? b : law.density((a - 1) / b));
  return law;
}

IDLaw two_sided_exponential(const json& p, const std::string& nm) {
  if (nm == "laplace") check_keys(nm, p, {});
  else check_keys(nm, p, {"alpha", "beta"});
  const double a = num(nm, p, "alpha", 1.0), b = num(nm, p, "beta", 1.0);
  require(a > 0 && b > 0, nm, "need alpha, beta > 0");
  IDLaw law;
  law.name = nm;
  law.params = nm == "laplace" ? json::object() : json{{"alpha", a}, {"beta", b}};
  LevyMeasure nu;
  nu.density = [a, b](double u) { return u > 0 ? std::exp(-a * u) / u : std::exp(b * u) / -u; };
  nu.plus = SideShape{0.0, kInf, TailKind::Exponential, 0.0, 0.0};
  nu.minus = SideShape{0.0, kInf, TailKind::Exponential, 0.0, 0.0};
  nu.tail_plus_closed = [a](double v) { return std::exp(-a * v) / a; };
  nu.tail_minus_closed = [b](double v) { return std::exp(b * v) / b; };
  const double sa = -std::expm1(-a) / a, sb = -std::expm1(-b) / b;
  nu.abs_moment_small_closed = sa + sb;
  nu.first_moment_small_closed = sa - sb;
  nu.abs_moment_tail_closed = std::exp(-a) / a + std::exp(-b) / b;
  nu.first_moment_tail_closed = std::exp(-a) / a - std::exp(-b) / b;
  nu.second_moment_closed = 1.0 / (a * a) + 1.0 / (b * b);
  nu.second_moment_small_closed =
      (1.0 - std::exp(-a) * (1.0 + a)) / (a * a) + (1.0 - std::exp(-b) * (1.0 + b)) / (b * b);
  nu.k_function = [a, b](double u) { return u > 0 ? std::exp(-a * u) : std::exp(b * u); };
  law.triplet = LevyTriplet{sa - sb, 0.0, nu};
  law.exponent = [a, b](double t) { return -std::log(cd(1.0, -t / a)) - std::log(cd(1.0, t / b)); };
  law.draw = [a, b](RandomStream& r) { return -std::log(r.uniform()) / a + std::log(r.uniform()) / b; };
  const double k = a * b / (a + b);
  law.density = [a, b, k](double x) { return x >= 0 ? k * std::exp(-a * x) : k * std::exp(b * x); };
  law.cdf = [a, b](double x) {
    return x >= 0 ? 1.0 - b / (a + b) * std::exp(-a * x) : a / (a + b) * std::exp(b * x);
  };
  law.mean = 1.0 / a - 1.0 / b;
  law.variance = 1.0 / (a * a) + 1.0 / (b * b);
  law.self_decomposable = true;
  law.density_sup = k;
  return law;
}

IDLaw stable(const json& p, const std::string& nm) {
  double alpha, c1, c2;
  if (nm == "sas") {
    check_keys(nm, p, {"alpha", "c"});
    alpha = num(nm, p, "alpha", 1.5);
    require(alpha > 1 && alpha < 2, nm, "alpha must lie in (1,2)");
    c1 = c2 = num(nm, p, "c", sas_unit_c(alpha));
  } else {
    check_keys(nm, p, {"alpha", "c1", "c2"});
    alpha = num(nm, p, "alpha", 1.5);
    require(alpha > 1 && alpha < 2, nm, "alpha must lie in (1,2)");
    c1 = num(nm, p, "c1", 1.0);
    c2 = num(nm, p, "c2", 1.0);
  }
  StableConstants k = stable_constants(alpha, c1, c2);
  IDLaw law;
  law.name = nm;
  law.params = nm == "sas" ? json{{"alpha", alpha}, {"c", c1}} : json{{"alpha", alpha}, {"c1", c1}, {"c2", c2}};
  LevyMeasure nu;
  nu.density = [alpha, c1, c2](double u) {
    return (u > 0 ? c1 : c2) * std::pow(std::abs(u), -1.0 - alpha);
  };
  nu.analytic_side = [alpha, c1, c2](int s, cd v) { return (s > 0 ? c1 : c2) * std::pow(v, -1.0 - alpha); };
  if (c1 > 0) nu.plus = SideShape{0.0, kInf, TailKind::Power, alpha, alpha};
  if (c2 > 0) nu.minus = SideShape{0.0, kInf, TailKind::Power, alpha, alpha};
  nu.tail_plus_closed = [alpha, c1](double v) { return c1 * std::pow(v, 1.0 - alpha) / (alpha - 1.0); };
  nu.tail_minus_closed = [alpha, c2](double v) { return c2 * std::pow(-v, 1.0 - alpha) / (alpha - 1.0); };
  nu.abs_moment_small_closed = kInf;
  nu.abs_moment_tail_closed = (c1 + c2) / (alpha - 1.0);
  nu.first_moment_tail_closed = (c1 - c2) / (alpha - 1.0);
  nu.second_moment_closed = kInf;
  nu.second_moment_small_closed = (c1 + c2) / (2.0 - alpha);
  nu.k_function = [alpha, c1, c2](double u) { return (u > 0 ? c1 : c2) * std::pow(std::abs(u), -alpha); };
  law.triplet = LevyTriplet{0.0, 0.0, nu};
  const double sa = k.sigma_alpha, beta = k.skew, center = k.center, tn = std::tan(M_PI * alpha / 2);
  law.exponent = [alpha, sa, beta, center, tn](double t) {
    double at = std::pow(std::abs(t), alpha);
    double sg = t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0);
    return cd(-sa * at, t * center + sa * at * beta * sg * tn);
  };
  const double sigma = std::pow(sa, 1.0 / alpha);
  law.draw = [alpha, sigma, beta, center](RandomStream& r) { return draw_stable(r, alpha, sigma, beta, center); };
  law.mean = center;
  law.beta_star = alpha;
  law.self_decomposable = true;
  law.density_sup = std::tgamma(1.0 + 1.0 / alpha) / (M_PI * sigma);
  auto expo = law.exponent;
  const double tcut = std::pow(60.0 / sa, 1.0 / alpha);
  // Far out the Fourier integral oscillates too fast; integrating e^{-a t^alpha} termwise against
  // e^{-itx} gives an asymptotic series, used once its 12th term is negligible.
  const cd a = sa * cd(1.0, -beta * tn);
  law.density = [expo, tcut, alpha, a, center, sigma](double x) {
    const double y = x - center;
    if (std::abs(y) > 20.0 * sigma) {
      const double ay = std::abs(y), sg = y > 0 ? -1.0 : 1.0;
      cd sum = 0.0, pw = 1.0;
      double last = 0.0;
      for (int k = 1; k <= 12; ++k) {
        pw *= -a;
        const double mag = std::exp(std::lgamma(alpha * k + 1) - std::lgamma(k + 1.0) - (alpha * k + 1) * std::log(ay));
        const cd term = pw * mag * std::polar(1.0, sg * M_PI * (alpha * k + 1) / 2);
        sum += term;
        last = std::abs(term);
      }
      if (last < 1e-13 * std::abs(sum)) return std::real(sum) / M_PI;
    }
    auto g = [&](double t) { return std::real(std::exp(expo(t) - cd(0.0, t * x))); };
    QuadratureConfig c;
    c.abs_tol = 1e-14;
    return integrate(g, 0.0, tcut, c).value / M_PI;
  };
  return law;
}

IDLaw chaos2(const json& p) {
  check_keys("chaos2", p, {"lambdas", "K", "tail_budget"});
  if (!p.contains("lambdas") || !p["lambdas"].is_array() || p["lambdas"].empty())
    throw Error(ErrorKind::ConfigInvalid, "chaos2: 'lambdas' must be a non-empty array");
  std::vector<double> lam;
  for (auto& v : p["lambdas"]) {
    if (!v.is_number()) throw Error(ErrorKind::ConfigInvalid, "chaos2: lambdas must be numbers");
    double x = v.get<double>();
    require(x != 0.0 && std::isfinite(x), "chaos2", "eigenvalues must be finite and nonzero");
    lam.push_back(x);
  }
  const std::size_t K = p.contains("K") ? p["K"].get<std::size_t>() : lam.size();
  const double budget = num("chaos2", p, "tail_budget", 1e-12);
  double trunc_tail = 0.0;
  for (std::size_t k = K; k < lam.size(); ++k) trunc_tail += std::abs(lam[k]);
  if (trunc_tail > budget)
    throw Error(ErrorKind::TruncationTooCoarse,
                "chaos2: sampler truncation tail " + std::to_string(trunc_tail) + " exceeds budget");
  IDLaw law;
  law.name = "chaos2";
  law.params = {{"lambdas", lam}, {"K", K}, {"tail_budget", budget}, {"truncation_tail", trunc_tail}};
  std::vector<double> pos, neg;
  for (double x : lam) (x > 0 ? pos : neg).push_back(std::abs(x));
  LevyMeasure nu;
  nu.density = [pos, neg](double u) {
    const auto& L = u > 0 ? pos : neg;
    double a = std::abs(u), s = 0.0;
    for (double l : L) s += std::exp(-a / (2 * l));
    return s / (2 * a);
  };
  double lmax_p = 0, lmax_n = 0;
  for (double l : pos) lmax_p = std::max(lmax_p, l);
  for (double l : neg) lmax_n = std::max(lmax_n, l);
  if (!pos.empty()) nu.plus = SideShape{0.0, kInf, TailKind::Exponential, 0.0, 0.0};
  if (!neg.empty()) nu.minus = SideShape{0.0, kInf, TailKind::Exponential, 0.0, 0.0};
  auto sum = [](const std::vector<double>& L, auto f) {
    double s = 0;
    for (double l : L) s += f(l);
    return s;
  };
  nu.tail_plus_closed = [pos, sum](double v) { return sum(pos, [v](double l) { return l * std::exp(-v / (2 * l)); }); };
  nu.tail_minus_closed = [neg, sum](double v) { return sum(neg, [v](double l) { return l * std::exp(v / (2 * l)); }); };
  auto small1 = [](double l) { return -l * std::expm1(-1.0 / (2 * l)); };
  auto tail1 = [](double l) { return l * std::exp(-1.0 / (2 * l)); };
  auto small2 = [](double l) {
    double a = 1.0 / (2 * l);
    return 2 * l * l * (1.0 - std::exp(-a) * (1.0 + a));
  };
  nu.abs_moment_small_closed = sum(pos, small1) + sum(neg, small1);
  nu.first_moment_small_closed = sum(pos, small1) - sum(neg, small1);
  nu.abs_moment_tail_closed = sum(pos, tail1) + sum(neg, tail1);
  nu.first_moment_tail_closed = sum(pos, tail1) - sum(neg, tail1);
  nu.second_moment_closed = sum(lam, [](double l) { return 2 * l * l; });
  nu.second_moment_small_closed = sum(pos, small2) + sum(neg, small2);
  nu.k_function = [pos, neg](double u) {
    const auto& L = u > 0 ? pos : neg;
    double s = 0.0;
    for (double l : L) s += std::exp(-std::abs(u) / (2 * l));
    return 0.5 * s;
  };
  law.triplet = LevyTriplet{-*nu.first_moment_tail_closed, 0.0, nu};
  law.exponent = [lam](double t) {
    cd s = 0.0;
    for (double l : lam) s += cd(0.0, -t * l) - 0.5 * std::log(cd(1.0, -2.0 * t * l));
    return s;
  };
  std::vector<double> head(lam.begin(), lam.begin() + std::min(K, lam.size()));
  law.draw = [head](RandomStream& r) {
    std::normal_distribution<double> nd;
    double s = 0.0;
    for (double l : head) {
      double z = nd(r);
      s += l * (z * z - 1.0);
    }
    return s;
  };
  law.mean = 0.0;
  law.variance = *nu.second_moment_closed;
  law.self_decomposable = true;
  return law;
}

// int_0^1 (cos(tu)-1)/u du = -Cin(t)
double cin(double t) {
  t = std::abs(t);
  if (t < 0.5) {
    double t2 = t * t, term = t2 / 2.0, s = 0.0;
    for (int k = 1; k <= 8; ++k) {
      s += (k % 2 ? 1.0 : -1.0) * term / (2.0 * k);
      term *= t2 / ((2.0 * k + 1) * (2.0 * k + 2));
    }
    return s;
  }
  return std::numbers::egamma + std::log(t) - gsl_sf_Ci(t);
}

IDLaw dickman(const json& p) {
  check_keys("dickman", p, {"theta"});
  const double th = num("dickman", p, "theta", 1.0);
  require(th > 0, "dickman", "theta must be positive");
  IDLaw law;
  law.name = "dickman";
  law.params = {{"theta", th}};
  LevyMeasure nu;
  nu.density = [th](double u) { return (u > 0 && u <= 1.0) ? th / u : 0.0; };
  nu.plus = SideShape{0.0, 1.0, TailKind::Compact, 0.0, 0.0};
  nu.tail_plus_closed = [th](double v) { return v < 1 ? th * (1.0 - v) : 0.0; };
  nu.tail_minus_closed = [](double) { return 0.0; };
  nu.abs_moment_small_closed = th;
  nu.first_moment_small_closed = th;
  nu.abs_moment_tail_closed = 0.0;
  nu.first_moment_tail_closed = 0.0;
  nu.second_moment_closed = th / 2;
  nu.second_moment_small_closed = th / 2;
  nu.k_function = [th](double u) { return (u > 0 && u <= 1.0) ? th : 0.0; };
  law.triplet = LevyTriplet{th, 0.0, nu};
  law.exponent = [th](double t) {
    if (t == 0.0) return cd(0.0);
    return th * cd(-cin(t), gsl_sf_Si(t));
  };
  law.draw = [th](RandomStream& r) {
    double prod = 1.0, s = 0.0;
    do {
      prod *= std::pow(r.uniform(), 1.0 / th);
      s += prod;
    } while (prod > 1e-17 * (1.0 + s));
    return s;
  };
  law.mean = th;
  law.variance = th / 2;
  law.self_decomposable = true;
  if (th == 1.0) law.density_sup = std::exp(-std::numbers::egamma);
  return law;
}

IDLaw idpareto(const json& p) {
  check_keys("idpareto", p, {"alpha"});
  const double a = num("idpareto", p, "alpha", 1.5);
  require(a > 1 && a < 2, "idpareto", "alpha must lie in (1,2)");
  const double c = (1.0 - a) / (2.0 * std::tgamma(2.0 - a) * std::cos(a * M_PI / 2));
  const double lam = std::pow(2.0 * c, 1.0 / a);
  IDLaw law;
  law.name = "idpareto";
  law.params = {{"alpha", a}, {"c", c}, {"lambda", lam}};
  law.density = [a, lam](double x) { return a / (2 * lam) * std::pow(1.0 + std::abs(x) / lam, -a - 1.0); };
  law.cdf = [a, lam](double x) {
    double tail = 0.5 * std::pow(1.0 + std::abs(x) / lam, -a);
    return x >= 0 ? 1.0 - tail : tail;
  };
  law.draw = [a, lam](RandomStream& r) {
    double u = r.uniform();
    double s = u < 0.5 ? -1.0 : 1.0;
    double w = u < 0.5 ? 2 * u : 2 * (1 - u);  // uniform on (0,1)
    return s * lam * (std::pow(w, -1.0 / a) - 1.0);
  };
  // phi(t) = -alpha Im int_0^inf e^{-w y} (1+iy)^{-alpha-1} dy, w = |t| lambda
  law.charfn_closed = [a, lam](double t) -> cd {
    if (t == 0.0) return 1.0;
    const double w = std::abs(t) * lam;
    auto g = [&](double y) { return std::exp(-w * y) * std::imag(std::pow(cd(1.0, y), -a - 1.0)); };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-17;
    cfg.rel_tol = 1e-14;
    double im = integrate(g, 0.0, 1.0, cfg).value + integrate_to_inf(g, 1.0, cfg).value;
    return -a * im;
  };
  auto cf = law.charfn_closed;
  law.exponent = [cf](double t) { return std::log(cf(t)); };
  law.mean = 0.0;
  law.beta_star = a;
  law.density_sup = a / (2 * lam);
  return law;
}

IDLaw normal(const json& p) {
  check_keys("normal", p, {"mean", "variance"});
  const double m = num("normal", p, "mean", 0.0), v = num("normal", p, "variance", 1.0);
  require(v > 0, "normal", "variance must be positive");
  IDLaw law;
  law.name = "normal";
  law.params = {{"mean", m}, {"variance", v}};
  LevyMeasure nu;
  nu.k_function = [](double) { return 0.0; };
  law.triplet = LevyTriplet{m, v, nu};
  law.exponent = [m, v](double t) { return cd(-0.5 * v * t * t, m * t); };
  const double sd = std::sqrt(v);
  law.draw = [m, sd](RandomStream& r) {
    std::normal_distribution<double> nd(m, sd);
    return nd(r);
  };
  law.density = [m, v](double x) { return std::exp(-0.5 * (x - m) * (x - m) / v) / std::sqrt(2 * M_PI * v); };
  law.cdf = [m, sd](double x) { return 0.5 * std::erfc(-(x - m) / (sd * M_SQRT2)); };
  law.mean = m;
  law.variance = v;
  law.self_decomposable = true;
  law.density_sup = 1.0 / std::sqrt(2 * M_PI * v);
  return law;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"poisson", "cp", "nbin0", "nbin", "gamma", "laplace", "texp", "sas", "stable",
          "chaos2", "dickman", "idpareto", "normal"};
}

IDLaw make_law(const std::string& name, const json& params) {
  const json& p = params.is_null() ? json::object() : params;
  if (name == "poisson") return poisson(p);
  if (name == "cp") return compound_poisson_uniform(p);
  if (name == "nbin0") return negative_binomial(p, false);
  if (name == "nbin") return negative_binomial(p, true);
  if (name == "gamma") return gamma_law(p);
  if (name == "laplace" || name == "texp") return two_sided_exponential(p, name);
  if (name == "sas" || name == "stable") return stable(p, name);
  if (name == "chaos2") return chaos2(p);
  if (name == "dickman") return dickman(p);
  if (name == "idpareto") return idpareto(p);
  if (name == "normal") return normal(p);
  throw Error(ErrorKind::ConfigInvalid, "unknown law '" + name + "'");
}

}  // namespace levystein
