// One pass/fail line per acceptance criterion. `acceptance` runs all, `acceptance 5` runs one.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "levystein/approx_bounds.hpp"
#include "levystein/bias_transforms.hpp"
#include "levystein/fourier_metrics.hpp"
#include "levystein/semigroup_stein.hpp"
#include "levystein/stein_ops.hpp"

using namespace levystein;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

constexpr std::size_t kMcSamples = 1'000'000;
constexpr std::uint64_t kSeed = 20240601;

Outcome identity_suite() {
  const std::vector<std::pair<std::string, nlohmann::json>> laws = {
      {"poisson", {{"lambda", 1.0}}},
      {"nbin0", {{"r", 2.0}, {"p", 0.5}}},
      {"cp", {{"rate", 1.0}, {"lo", 0.0}, {"hi", 1.0}}},
      {"gamma", {{"alpha", 2.0}, {"beta", 1.0}}},
      {"laplace", nlohmann::json::object()},
      {"texp", {{"alpha", 1.0}, {"beta", 2.0}}},
      {"sas", {{"alpha", 1.5}}}};
  std::size_t fails = 0, total = 0;
  double worst = 0.0;
  for (const auto& [nm, p] : laws) {
    auto est = identity_residuals(make_law(nm, p), blip_dictionary(), kMcSamples, kSeed);
    for (const auto& e : est) {
      ++total;
      fails += !e.passes(4.0);
      worst = std::max(worst, std::abs(e.estimate) / e.stderr_);
    }
  }
  return {fails == 0, std::to_string(total - fails) + "/" + std::to_string(total) +
                          " residuals within 4 stderr, worst |est|/stderr = " + fmt("%.2f", worst)};
}

Outcome specialized_suite() {
  const std::vector<std::pair<std::string, nlohmann::json>> laws = {
      {"poisson", {{"lambda", 1.0}}},
      {"nbin0", {{"r", 2.0}, {"p", 0.5}}},
      {"nbin", {{"r", 2.0}, {"p", 0.5}}},
      {"cp", {{"rate", 1.0}, {"lo", 0.0}, {"hi", 1.0}}},
      {"laplace", nlohmann::json::object()},
      {"gamma", {{"alpha", 2.0}, {"beta", 1.0}}},
      {"stable", {{"alpha", 1.5}, {"c1", 1.0}, {"c2", 0.5}}},
      {"sas", {{"alpha", 1.5}}}};
  const auto& dict = c2_dictionary();
  double worst = 0.0;
  std::string where;
  for (const auto& [nm, p] : laws) {
    IDLaw law = make_law(nm, p);
    for (std::size_t j = 0; j < 5; ++j)
      for (double x : {-2.0, -0.5, 0.0, 0.7, 1.5, 3.0}) {
        double d = std::abs(specialized_operator(dict[j], x, law) - apply_Agen(dict[j], x, law));
        if (d > worst) {
          worst = d;
          where = nm + "/" + dict[j].name + " x=" + fmt("%g", x);
        }
      }
  }
  return {worst <= 1e-6, "max |specialized - generic| = " + fmt("%.3g", worst) + " at " + where + " (tol 1e-6)"};
}

Outcome bias_suite() {
  const auto& dict = c2_dictionary();
  std::size_t fails = 0, total = 0;
  double worst = 0.0;
  auto check = [&](const std::function<Estimate(const TestFunction&, std::uint64_t)>& run) {
    for (std::size_t j = 0; j < dict.size(); ++j) {
      Estimate e = run(dict[j], kSeed + j);
      ++total;
      fails += !e.passes(4.0);
      worst = std::max(worst, std::abs(e.estimate) / e.stderr_);
    }
  };
  for (auto [nm, p] : std::vector<std::pair<std::string, nlohmann::json>>{
           {"gamma", {{"alpha", 2.0}, {"beta", 1.0}}}, {"poisson", {{"lambda", 1.0}}}, {"nbin0", {{"r", 2.0}, {"p", 0.5}}}}) {
    IDLaw law = make_law(nm, p);
    SizeBiasPair sb = size_bias_pair(law);
    check([&](const TestFunction& f, std::uint64_t s) { return size_bias_residual(law, sb, f, kMcSamples, s); });
  }
  for (auto [nm, p] : std::vector<std::pair<std::string, nlohmann::json>>{{"gamma", {{"alpha", 2.0}, {"beta", 1.0}}},
                                                                        {"texp", {{"alpha", 1.0}, {"beta", 2.0}}}}) {
    IDLaw law = make_law(nm, p);
    ZeroBias zb = zero_bias(law);
    check([&](const TestFunction& f, std::uint64_t s) { return zero_bias_residual(law, zb, f, kMcSamples, s); });
  }
  IDLaw sas = make_law("sas", {{"alpha", 1.5}});
  MixedTransform mt = mixed_transform(sas);
  check([&](const TestFunction& f, std::uint64_t s) { return mixed_residual(sas, mt, f, kMcSamples, s); });
  return {fails == 0, std::to_string(total - fails) + "/" + std::to_string(total) +
                          " residuals within 4 joint stderr, worst ratio = " + fmt("%.2f", worst)};
}

Outcome dawson_suite() {
  IDLaw gamma = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  IDLaw normal = make_law("normal");
  double slack_g = kInf, slack_n = kInf;
  for (double t : uniform_grid(0.0, 50.0, 1001)) {
    slack_g = std::min(slack_g, t - dawson_functional(gamma, t));
    slack_n = std::min(slack_n, 2 * t / (1 + t * t) - dawson_functional(normal, t));
  }
  DawsonFit fit = fit_stable_dawson(1.5);
  bool ok = slack_g >= -1e-10 && slack_n >= -1e-10 && fit.overshoot < 1e-3;
  return {ok, "min slack gamma " + fmt("%.3g", slack_g) + ", normal " + fmt("%.3g", slack_n) + "; SaS C' = " +
                  fmt("%.6f", fit.C) + " overshoot " + fmt("%.2g", fit.overshoot)};
}

std::vector<double> pow2_grid(int lo, int hi) {
  std::vector<double> g;
  for (int k = lo; k <= hi; ++k) g.push_back(std::ldexp(1.0, k));
  return g;
}

Outcome pareto_suite() {
  RateTable t = pareto_to_stable_experiment(1.5, pow2_grid(4, 12), uniform_grid(-10, 10, 401));
  const double target = -1.0 / 3.0;
  return {std::abs(t.slope - target) <= 0.15,
          "slope " + fmt("%.4f", t.slope) + " vs " + fmt("%.4f", target) + " (tol 0.15)"};
}

Outcome cpa_suite() {
  IDLaw sas = make_law("sas", {{"alpha", 1.5}});
  RateTable t = cpa_rate_experiment(sas, pow2_grid(4, 10), uniform_grid(-10, 10, 401));
  IDLaw st = make_law("stable", {{"alpha", 1.5}, {"c1", 1.0}, {"c2", 0.5}});
  const double e = cpa_bounds(st, 16, CpaVariant::Stable).params.at("exponent").get<double>();
  const double target = -2.0 / 3.0;
  return {std::abs(t.slope - target) <= 0.1, "SaS slope " + fmt("%.4f", t.slope) + " vs " + fmt("%.4f", target) +
                                                 " (tol 0.1); general-stable bound exponent -" + fmt("%.4f", e)};
}

Outcome chaos_suite() {
  auto lam = geometric_chaos_eigenvalues(60);
  double lo = kInf, hi = 0.0, prev = chaos_delta(truncate_rescaled(lam, 1), lam);
  for (std::size_t n = 2; n <= 12; ++n) {
    double d = chaos_delta(truncate_rescaled(lam, n), lam);
    lo = std::min(lo, d / prev);
    hi = std::max(hi, d / prev);
    prev = d;
  }
  return {lo >= 0.4 && hi <= 0.6,
          "Delta_{n+1}/Delta_n in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "] for n=1..11, required 0.5 +- 20%"};
}

Outcome kernel_suite() {
  const double alpha = 1.5, c1 = 1.0, c2 = 0.5;
  IDLaw st = make_law("stable", {{"alpha", alpha}, {"c1", c1}, {"c2", c2}});
  const LevyMeasure nu = st.require_triplet().nu.generic_copy();  // quadrature only, no closed tails
  double worst_fub = 0.0, worst_closed = 0.0, alt_gap = 0.0;
  for (double N : {1.0, 4.0, 8.0}) {
    const double exact = (c1 + c2) * std::pow(N, 2 - alpha) / (2 - alpha);
    worst_fub = std::max(worst_fub, std::abs(kernel_integral(nu, N) - exact));
    for (double t : {-0.9 * N, -0.3, -0.01, 0.01, 0.3, 0.9 * N}) {
      worst_closed = std::max(worst_closed, std::abs(kernel_K(nu, t, N) - kernel_K_stable(alpha, c1, c2, t, N)));
      alt_gap = std::max(alt_gap, std::abs(kernel_K(nu, t, N) - kernel_K_stable_alt(alpha, c1, c2, t, N)));
    }
  }
  IDLaw gm = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  const LevyMeasure& ng = gm.require_triplet().nu;
  for (double N : {1.0, 8.0}) {
    const double exact = ng.integrate([](double u) { return u * u; }, -N, N);
    worst_fub = std::max(worst_fub, std::abs(kernel_integral(ng, N) - exact));
  }
  bool ok = worst_fub <= 1e-8 && worst_closed <= 1e-8;
  return {ok, "Fubini max err " + fmt("%.2g", worst_fub) + ", stable closed form vs quadrature " +
                  fmt("%.2g", worst_closed) + " (t^{1-a} form); t^{a-1} form differs by " + fmt("%.3g", alt_gap)};
}

double against_density(const IDLaw& law, const std::function<double(double)>& g, double lo) {
  QuadratureConfig q{1e-12, 1e-10, 4'000'000};
  auto w = [&](double x) { return g(x) * law.density(x); };
  if (lo == 0.0) return integrate_to_zero(w, 1.0, q).value + integrate_to_inf(w, 1.0, q).value;
  return integrate(w, -1.0, 1.0, q).value + integrate_to_inf(w, 1.0, q).value +
         integrate_to_inf([&](double x) { return w(-x); }, 1.0, q).value;
}

Outcome semigroup_target(const IDLaw& law, double lo_support, double res_lo, double res_hi, double res_tol) {
  auto t0 = std::chrono::steady_clock::now();
  SemigroupTarget tg = make_semigroup_target(law);
  const auto dict = fourier_dictionary();
  double p0 = 0.0, inv = 0.0, comp = 0.0;
  for (const auto& h : dict)
    for (double x : uniform_grid(-5.0, 5.0, 21)) p0 = std::max(p0, std::abs(pt_apply(tg, h, x, 0.0) - h(x)));
  for (std::size_t j = 0; j < 2; ++j) {
    const double Eh = against_density(law, dict[j].f, lo_support);
    for (double t : {0.1, 1.0, 5.0})
      inv = std::max(inv, std::abs(against_density(law, [&](double x) { return pt_apply(tg, dict[j], x, t); }, lo_support) - Eh));
  }
  TestFunction P7 = pt_function(tg, dict[0], 0.7);
  for (double x : {-2.0, 0.0, 3.0}) comp = std::max(comp, std::abs(pt_apply(tg, P7, x, 0.3) - pt_apply(tg, dict[0], x, 1.0)));
  SteinSolution sol = solve_stein(tg, dict[0]);
  const double fsup = sol.f_prime_sup();
  const double res = stein_residual(sol, uniform_grid(res_lo, res_hi, static_cast<std::size_t>(2 * (res_hi - res_lo)) + 1));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = p0 < 1e-8 && inv < 1e-5 && comp < 1e-6 && fsup <= 1.0 && res < res_tol && secs < 300;
  return {ok, law.name + ": P0 " + fmt("%.2g", p0) + ", invariance " + fmt("%.2g", inv) + ", composition " +
                  fmt("%.2g", comp) + ", sup|f'| " + fmt("%.4f", fsup) + ", residual " + fmt("%.2g", res) + " (tol " +
                  fmt("%g", res_tol) + "), " + fmt("%.1f", secs) + " s"};
}

Outcome semigroup_suite() {
  Outcome g = semigroup_target(make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}}), 0.0, -5.0, 10.0, 1e-4);
  Outcome s = semigroup_target(make_law("sas", {{"alpha", 1.5}}), -kInf, -5.0, 5.0, 1e-3);
  return {g.pass && s.pass, g.detail + "; " + s.detail};
}

Outcome gwlt_suite() {
  const std::size_t n = 64;
  IDLaw target = make_law("gamma", {{"alpha", 1.0}, {"beta", 1.0}});
  SumScheme s{{exponential_summand(1.0)}, 1.0 / std::sqrt(64.0), 1.0 - std::sqrt(64.0), n};
  BoundReport r = gwlt_bound(s, target, 8.0);
  bool finite = true;
  for (const auto& [k, v] : r.terms) finite = finite && std::isfinite(v) && v >= 0;
  Dw2Lower lo = dw2_lower_estimate([&](RandomStream& g) { return s.draw_sum(g); }, target, 100000, kSeed);
  const double total = r.total();
  bool ok = finite && r.terms.size() == 6 && total > 0 && total >= lo.estimate;
  return {ok, "bound " + fmt("%.6f", total) + " >= lower estimate " + fmt("%.6f", lo.estimate) + " (" + lo.function + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"characterizing identities", identity_suite}, {"specialized operators", specialized_suite},
      {"bias transforms", bias_suite},              {"Dawson bounds", dawson_suite},
      {"Pareto to stable rate", pareto_suite},      {"CPA rates", cpa_suite},
      {"second-chaos Delta", chaos_suite},          {"kernel identities", kernel_suite},
      {"semigroup suite", semigroup_suite},         {"GWLT bound", gwlt_suite}};
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %zu %s [%s]: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
