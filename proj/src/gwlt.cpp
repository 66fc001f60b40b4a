#include <algorithm>
#include <cmath>

#include "levystein/approx_bounds.hpp"
#include "levystein/semigroup_stein.hpp"
#include "levystein/test_functions.hpp"

namespace levystein {

namespace {

const QuadratureConfig kQ{1e-13, 1e-10, 2'000'000};

// int_a^b g over R with either end possibly infinite; splits at 0 and +-1.
double line_integral(const std::function<double(double)>& g, double a, double b) {
  if (!(b > a)) return 0.0;
  double acc = 0.0;
  auto piece = [&](double lo, double hi) {
    lo = std::max(lo, a);
    hi = std::min(hi, b);
    if (!(hi > lo)) return;
    if (std::isinf(hi)) {
      acc += integrate_to_inf(g, lo, kQ).value;
    } else if (std::isinf(lo)) {
      acc += integrate_to_inf([&](double x) { return g(-x); }, -hi, kQ).value;
    } else if (lo == 0.0) {
      acc += integrate_to_zero(g, hi, kQ).value;
    } else if (hi == 0.0) {
      acc += integrate_to_zero([&](double x) { return g(-x); }, -lo, kQ).value;
    } else {
      acc += integrate(g, lo, hi, kQ).value;
    }
  };
  piece(-kInf, -1.0);
  piece(-1.0, 0.0);
  piece(0.0, 1.0);
  piece(1.0, kInf);
  return acc;
}

double abs_tail(const LevyMeasure& nu, double N) {
  double v = 0.0;
  if (nu.plus.present() || !nu.atoms.empty()) v += nu.tail_plus(N);
  if (nu.minus.present() || !nu.atoms.empty()) v += nu.tail_minus(-N);
  return v;
}

}  // namespace

double SummandLaw::expect(const std::function<double(double)>& g, double a, double b) const {
  if (analytic()) {
    double acc = 0.0;
    if (density)
      acc += line_integral([&](double z) { return g(z) * density(z); }, std::max(a, lo), std::min(b, hi));
    for (const Atom& at : atoms)
      if (at.location > a && at.location <= b) acc += at.mass * g(at.location);
    return acc;
  }
  if (!draw) throw Error(ErrorKind::Unavailable, name + ": summand has neither density nor sampler");
  return mc_mean(mc_samples, mc_seed, [&](RandomStream& r) {
           const double z = draw(r);
           return z > a && z <= b ? g(z) : 0.0;
         }).estimate;
}

SummandLaw exponential_summand(double rate) {
  if (!(rate > 0)) throw Error(ErrorKind::DomainError, "exponential_summand: rate must be positive");
  SummandLaw z;
  z.name = "exp(" + std::to_string(rate) + ")";
  z.density = [rate](double x) { return x < 0 ? 0.0 : rate * std::exp(-rate * x); };
  z.lo = 0.0;
  z.draw = [rate](RandomStream& r) { return -std::log(r.uniform()) / rate; };
  return z;
}

SummandLaw summand_from_law(const IDLaw& law, double lo, double hi) {
  SummandLaw z;
  z.name = law.name;
  z.lo = lo;
  z.hi = hi;
  z.draw = law.draw;
  if (law.density) {
    z.density = law.density;
  } else if (law.lattice && law.pmf && std::isfinite(lo) && std::isfinite(hi)) {
    for (long k = static_cast<long>(std::ceil(lo)); k <= static_cast<long>(std::floor(hi)); ++k)
      if (double p = law.pmf(k); p > 0) z.atoms.push_back({static_cast<double>(k), p});
    z.draw = nullptr;  // exact through the atoms
  }
  return z;
}

double SumScheme::null_array_max(double eps) const {
  double m = 0.0;
  const std::size_t rows = iid() ? 1 : n;
  const double cut = eps / std::abs(b);
  for (std::size_t k = 0; k < rows; ++k) {
    const SummandLaw& z = row(k);
    auto one = [](double) { return 1.0; };
    m = std::max(m, z.expect(one, -kInf, std::nextafter(-cut, -kInf)) + z.expect(one, cut, kInf));
  }
  return m;
}

double SumScheme::draw_sum(RandomStream& r) const {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += row(k).draw(r);
  return b * s + c;
}

double summand_kernel(const SummandLaw& z, double b, double t, double N) {
  if (!(b > 0)) throw Error(ErrorKind::DomainError, "summand_kernel: b must be positive");
  if (std::abs(t) > N) return 0.0;
  auto id = [](double x) { return x; };
  if (t >= 0) return b * z.expect(id, std::nextafter(t / b, -kInf), N / b);
  return -b * z.expect(id, std::nextafter(-N / b, -kInf), t / b);
}

BoundReport gwlt_bound(const SumScheme& scheme, const IDLaw& target, double N,
                       const std::optional<GwltHolder>& holder) {
  if (!(N >= 1.0)) throw Error(ErrorKind::DomainError, "gwlt_bound: N must be >= 1");
  if (!(scheme.b > 0) || scheme.n == 0) throw Error(ErrorKind::DomainError, "gwlt_bound: need b > 0, n >= 1");
  if (!scheme.iid() && scheme.summands.size() != scheme.n)
    throw Error(ErrorKind::ConfigInvalid, "gwlt_bound: one summand law per row required");
  if (!target.self_decomposable) throw Error(ErrorKind::AssumptionViolated, target.name + " is not self-decomposable");
  const LevyTriplet& tr = target.require_triplet();
  if (tr.sigma2 != 0.0) throw Error(ErrorKind::AssumptionViolated, "gwlt_bound: target has a Gaussian part");
  const LevyMeasure& nu = tr.nu;
  const double small = nu.abs_moment_small();
  if (holder && std::isfinite(small))
    throw Error(ErrorKind::AssumptionViolated, "gwlt_bound: Hölder variant needs int_{|u|<=1} |u| nu = inf");
  if (!holder && !std::isfinite(small))
    throw Error(ErrorKind::AssumptionViolated, "gwlt_bound: int_{|u|<=1} |u| nu diverges; use the Hölder variant");

  const double b = scheme.b, n = static_cast<double>(scheme.n);
  const std::size_t rows = scheme.iid() ? 1 : scheme.n;
  const double mult = scheme.iid() ? n : 1.0;  // iid rows are summed once and scaled
  const double q = holder ? holder->beta / (holder->beta + holder->gamma) : 1.0;

  double sumEZ = 0, sumAbs = 0, sumAbsQ = 0, sumMeanAbs = 0, sumTail = 0;
  for (std::size_t k = 0; k < rows; ++k) {
    const SummandLaw& z = scheme.row(k);
    const double ez = z.expect([](double x) { return x; });
    const double ea = z.expect([](double x) { return std::abs(x); });
    sumEZ += ez;
    sumAbs += ea;
    if (holder) sumAbsQ += z.expect([q](double x) { return std::pow(std::abs(x), q); });
    sumMeanAbs += std::abs(ez) * ea;
    auto absz = [](double x) { return std::abs(x); };
    sumTail += z.expect(absz, -kInf, std::nextafter(-N / b, -kInf)) + z.expect(absz, N / b, kInf);
  }
  sumEZ *= mult;
  sumAbs *= mult;
  sumAbsQ *= mult;
  sumMeanAbs *= mult;
  sumTail *= mult;

  const double EX = mean_of(target);
  BoundReport r;
  r.name = "gwlt_bound";
  r.add("centering", std::abs(EX - (scheme.c + b * sumEZ)));
  if (holder) {
    const double C = holder->C1 + holder->C2;
    r.add("moment", C * std::pow(b, q) / n * sumAbsQ);
    r.params["C_gamma_beta"] = C;
    r.params["holder_exponent"] = q;
  } else {
    r.add("moment", b / n * sumAbs * (small + nu.abs_moment_tail()));
  }
  r.add("mean_abs", 0.5 * b * b * sumMeanAbs);
  r.add("levy_tail", 2.0 * abs_tail(nu, N));
  r.add("summand_tail", 2.0 * b * sumTail);

  double kern = 0.0;
  for (std::size_t k = 0; k < rows; ++k) {
    const SummandLaw& z = scheme.row(k);
    auto gap = [&](double t) { return std::abs(kernel_K(nu, t, N) / n - summand_kernel(z, b, t, N)); };
    double v = integrate_to_zero(gap, N, kQ).value + integrate_to_zero([&](double s) { return gap(-s); }, N, kQ).value;
    kern += v;
  }
  r.add("kernel", 0.5 * mult * kern);

  r.params["n"] = scheme.n;
  r.params["b"] = b;
  r.params["c"] = scheme.c;
  r.params["N"] = N;
  r.params["target"] = target.name;
  r.params["variant"] = holder ? "holder" : "finite";
  r.derived["null_array_max_eps0.1"] = scheme.null_array_max(0.1);
  return r;
}

Dw2Lower dw2_lower_estimate(const std::function<double(RandomStream&)>& draw_s, const IDLaw& target,
                            std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw Error(ErrorKind::ConfigInvalid, "dw2_lower_estimate: need at least 2 samples");
  const auto& dict = c2_dictionary();
  const std::size_t m = dict.size();
  auto moments = [&](const std::function<double(RandomStream&)>& draw, std::uint64_t stream) {
    std::vector<double> s(m, 0.0), s2(m, 0.0);
    RandomStream r(seed, stream);
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = draw(r);
      for (std::size_t j = 0; j < m; ++j) {
        const double v = dict[j](x);
        s[j] += v;
        s2[j] += v * v;
      }
    }
    std::vector<std::pair<double, double>> out(m);
    const double ns = static_cast<double>(samples);
    for (std::size_t j = 0; j < m; ++j) {
      const double mean = s[j] / ns;
      const double var = std::max(0.0, (s2[j] - ns * mean * mean) / (ns - 1));
      out[j] = {mean, std::sqrt(var / ns)};
    }
    return out;
  };
  auto S = moments(draw_s, 0);
  std::vector<std::pair<double, double>> X(m);
  if (target.density) {
    for (std::size_t j = 0; j < m; ++j)
      X[j] = {line_integral([&](double x) { return dict[j](x) * target.density(x); }, -kInf, kInf), 0.0};
  } else if (target.draw) {
    X = moments(target.draw, 1);
  } else {
    throw Error(ErrorKind::Unavailable, target.name + ": neither density nor sampler");
  }
  Dw2Lower best;
  for (std::size_t j = 0; j < m; ++j) {
    const double raw = std::abs(S[j].first - X[j].first);
    const double se = std::hypot(S[j].second, X[j].second);
    const double est = std::max(0.0, raw - 3.0 * se);
    if (est > best.estimate || best.function.empty()) {
      best = {est, raw, se, dict[j].name};
    }
  }
  return best;
}

}  // namespace levystein
