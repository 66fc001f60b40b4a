#include <cmath>

#include "common.hpp"
#include "levystein/approx_bounds.hpp"
#include "levystein/semigroup_stein.hpp"

using namespace levystein;

TEST_CASE("delta functionals vanish on identical laws") {
  IDLaw g = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  CHECK(delta_sizebias(g, g).total() == Approx(0.0).margin(1e-10));
  CHECK(delta_zerobias(g, g).total() == Approx(0.0).margin(1e-10));
  CHECK(delta_selfdecomp(g, g).total() == Approx(0.0).margin(1e-10));
}

TEST_CASE("gamma(2.1,1) against gamma(2,1)") {
  IDLaw a = make_law("gamma", {{"alpha", 2.1}, {"beta", 1.0}}), b = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  // u^2 nu(du) = alpha u e^{-u} du, so Y ~ Gamma(2,1) for both; eta and E X each differ by 0.1.
  BoundReport z = delta_zerobias(a, b);
  CHECK(z.total() == Approx(0.2).margin(1e-8));
  CHECK(delta_zerobias(a, b, W1Route::DoubleIntegral).total() == Approx(z.total()).margin(1e-6));
  // m0+ = alpha/beta and Y+ ~ Exp(1) for both.
  CHECK(delta_sizebias(a, b).total() == Approx(0.1).margin(1e-8));
  CHECK(delta_selfdecomp(a, b).total() > 0.0);
}

TEST_CASE("second-chaos Delta matches the closed form") {
  auto lam = geometric_chaos_eigenvalues(60);
  const double c = std::sqrt(1.5);
  CHECK(lam[0] == Approx(c / 2).epsilon(1e-14));
  for (std::size_t n : {1u, 3u, 6u, 10u}) {
    std::vector<double> head(lam.begin(), lam.begin() + n);
    CHECK(chaos_delta(head, lam) == Approx(4 * c * c * c * std::pow(8.0, -double(n)) / 7).epsilon(1e-6));
  }
  CHECK(chaos_delta(lam, lam) == Approx(0.0).margin(1e-14));
  auto r = truncate_rescaled(lam, 4);
  double s = 0.0;
  for (double v : r) s += v * v;
  CHECK(s == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("compound Poisson approximation charfn") {
  IDLaw g = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  // n = 1 is the compound Poisson law with unit rate and jumps distributed as X.
  for (double t : {-3.0, 0.5, 2.0}) CHECK(std::abs(cpa_charfn(g, 1.0, t) - std::exp(g.charfn(t) - 1.0)) < 1e-12);
  for (double t : {0.5, 1.0, 4.0})
    CHECK(std::abs(cpa_charfn(g, 1024.0, t) - g.charfn(t)) < std::abs(cpa_charfn(g, 128.0, t) - g.charfn(t)));
  // Forced phase unwrapping agrees with the closed-form logarithm.
  for (double t : {0.7, 5.0}) CHECK(std::abs(cpa_charfn(g, 16.0, t, true) - cpa_charfn(g, 16.0, t)) < 1e-10);
}

TEST_CASE("CPA exponents") {
  CHECK(cpa_exponent(CpaVariant::SaS, 1.0, 1.5) == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(cpa_exponent(CpaVariant::Stable, 1.0, 1.5) == Approx(0.4).epsilon(1e-12));
  CHECK(cpa_exponent(CpaVariant::L1, 1.0, 1.5) == Approx(1.0 / 3.0).epsilon(1e-12));
  IDLaw g = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  CHECK(cpa_bounds(g, 64, CpaVariant::L1).params.at("exponent").get<double>() == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("Pareto sums approach the stable law") {
  std::vector<double> grid = uniform_grid(-10, 10, 201);
  RateTable t = pareto_to_stable_experiment(1.5, {16, 64, 256}, grid);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].dK > 0);
  CHECK(t.rows[1].dK < t.rows[0].dK);
  CHECK(t.rows[2].dK < t.rows[1].dK);
  CHECK(error_kind([&] { pareto_to_stable_experiment(1.5, {}, grid); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("kernel K") {
  IDLaw st = make_law("stable", {{"alpha", 1.5}, {"c1", 1.0}, {"c2", 0.5}});
  const LevyMeasure& nu = st.require_triplet().nu;
  CHECK(kernel_K(nu, 3.0, 2.0) == 0.0);
  CHECK(kernel_K(nu, -2.5, 2.0) == 0.0);
  for (double t : {-1.9, -0.5, 0.01, 1.0, 1.99}) CHECK(kernel_K(nu, t, 2.0) >= 0.0);
  CHECK(kernel_integral(nu, 2.0) == Approx(1.5 * std::pow(2.0, 0.5) / 0.5).epsilon(1e-9));
}

TEST_CASE("Hölder exponents") {
  IDLaw st = make_law("sas", {{"alpha", 1.5}});
  HolderResult h = holder_exponent(st.require_triplet().nu);
  CHECK_FALSE(h.lipschitz);
  CHECK(h.exponent == Approx(0.5).margin(1e-3));
  CHECK(holder_exponent(make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}}).require_triplet().nu).lipschitz);
  CHECK(holder_exponent(make_law("dickman", {{"theta", 1.0}}).require_triplet().nu).lipschitz);
}

TEST_CASE("GWLT bound, finite variant") {
  IDLaw target = make_law("gamma", {{"alpha", 1.0}, {"beta", 1.0}});
  SumScheme s{{exponential_summand(1.0)}, 1.0 / 8.0, 1.0 - 8.0, 64};
  BoundReport r = gwlt_bound(s, target, 8.0);
  REQUIRE(r.terms.size() == 6);
  for (const auto& [k, v] : r.terms) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
  Dw2Lower lo = dw2_lower_estimate([&](RandomStream& g) { return s.draw_sum(g); }, target, 100000, 9);
  CHECK(r.total() >= lo.estimate);
  CHECK(error_kind([&] { gwlt_bound(s, target, 8.0, GwltHolder{0.5, 1.5, 1.0, 1.0}); }) ==
        ErrorKind::AssumptionViolated);
}

TEST_CASE("GWLT kernel gap shrinks for matched increments") {
  IDLaw target = make_law("gamma", {{"alpha", 1.0}, {"beta", 1.0}});
  double prev = kInf;
  for (std::size_t n : {4u, 16u, 64u}) {
    IDLaw inc = make_law("gamma", {{"alpha", 1.0 / n}, {"beta", 1.0}});
    SumScheme s{{summand_from_law(inc, 0.0, kInf)}, 1.0, 0.0, n};
    BoundReport r = gwlt_bound(s, target, 4.0);
    CHECK(r.term("centering") == Approx(0.0).margin(1e-9));
    CHECK(r.term("kernel") < prev);
    prev = r.term("kernel");
  }
}

TEST_CASE("GWLT bound, Hölder variant with Pareto summands") {
  const double alpha = 1.5;
  IDLaw target = make_law("sas", {{"alpha", alpha}});
  const double c = target.require_triplet().nu.density(1.0);  // c |u|^{-1-alpha}
  SummandLaw z;
  z.name = "pareto";
  z.density = [alpha](double x) { return std::abs(x) > 1 ? 0.5 * alpha * std::pow(std::abs(x), -1 - alpha) : 0.0; };
  const std::size_t n = 256;
  // b^alpha n alpha/2 = c matches the tail of the target.
  const double b = std::pow(2 * c / (alpha * n), 1 / alpha);
  SumScheme s{{z}, b, 0.0, n};
  HolderResult h = holder_exponent(target.require_triplet().nu);
  BoundReport r = gwlt_bound(s, target, 4.0, GwltHolder{h.beta, h.gamma, h.C1, h.C2});
  REQUIRE(r.terms.size() == 6);
  for (const auto& [k, v] : r.terms) CHECK(std::isfinite(v));
  CHECK(r.params.at("holder_exponent").get<double>() == Approx(h.beta / (h.beta + h.gamma)).epsilon(1e-12));
  CHECK(error_kind([&] { gwlt_bound(s, target, 4.0); }) == ErrorKind::AssumptionViolated);
}
