#include <cmath>

#include "common.hpp"
#include "levystein/approx_bounds.hpp"
#include "levystein/semigroup_stein.hpp"

using namespace levystein;

namespace {

const IDLaw& gamma21() {
  static const IDLaw g = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  return g;
}

double density_expect(const IDLaw& law, const std::function<double(double)>& h) {
  QuadratureConfig q{1e-13, 1e-11};
  auto w = [&](double x) { return h(x) * law.density(x); };
  return integrate_to_zero(w, 1.0, q).value + integrate_to_inf(w, 1.0, q).value;
}

}  // namespace

TEST_CASE("semigroup at t = 0 and t = 10") {
  SemigroupTarget tg = make_semigroup_target(gamma21());
  TestFunction h = gaussian_bump(0.25, 2.0, 1.0);
  for (double x : {-2.0, 0.0, 1.5, 4.0}) CHECK(pt_apply(tg, h, x, 0.0) == Approx(h(x)).margin(1e-10));
  const double Eh = density_expect(gamma21(), h.f);
  CHECK(tg.expect(h) == Approx(Eh).margin(1e-10));
  for (double x : {-3.0, 0.0, 5.0}) CHECK(std::abs(pt_apply(tg, h, x, 10.0) - Eh) < 1e-4);
}

TEST_CASE("semigroup composition") {
  SemigroupTarget tg = make_semigroup_target(gamma21());
  TestFunction h = gaussian_bump(0.25, 2.0, 1.0);
  TestFunction p7 = pt_function(tg, h, 0.7);
  for (double x : {-2.0, 0.0, 3.0}) CHECK(std::abs(pt_apply(tg, p7, x, 0.3) - pt_apply(tg, h, x, 1.0)) < 1e-6);
}

TEST_CASE("Monte Carlo P_t agrees with the Fourier route") {
  SemigroupTarget tg = make_semigroup_target(gamma21());
  TestFunction h = gaussian_bump(0.25, 2.0, 1.0);
  Estimate e = pt_apply_mc(tg, h, 1.0, 0.5, 200000, 3);
  const double f = pt_apply(tg, h, 1.0, 0.5);
  CHECK(std::abs(e.estimate - f) <= 4 * e.stderr_);
  SemigroupTarget sas = make_semigroup_target(make_law("sas", {{"alpha", 1.5}}));
  CHECK(error_kind([&] { MuTSampler(sas, 0.5); }) == ErrorKind::NoMuTSampler);
}

TEST_CASE("W1(mu_t, mu_X) decays geometrically") {
  SemigroupTarget tg = make_semigroup_target(gamma21());
  double prev = tg.w1_mu_t(0.5);
  for (double t : {1.0, 2.0, 4.0}) {
    const double w = tg.w1_mu_t(t);
    CHECK(w < prev);
    prev = w;
  }
  // Each unit of time shrinks W1 at least by e^{-1/3}.
  CHECK(tg.w1_mu_t(4.0) <= std::exp(-3.0 / 3.0) * tg.w1_mu_t(1.0));
}

TEST_CASE("generator") {
  SemigroupTarget tg = make_semigroup_target(gamma21());
  TestFunction lin = linear_function(0.5, 1.0);
  CHECK(generator_apply(tg, lin, 1.3) == Approx((2.0 - 1.3) * 0.5).margin(1e-10));

  // (P_t f - f)/t -> A f, with error O(t).
  TestFunction h = gaussian_bump(0.25, 2.0, 1.0);
  for (double x : {0.5, 2.0}) {
    const double A = generator_apply(tg, h, x);
    const double e2 = std::abs((pt_apply(tg, h, x, 1e-2) - h(x)) / 1e-2 - A);
    const double e3 = std::abs((pt_apply(tg, h, x, 1e-3) - h(x)) / 1e-3 - A);
    CHECK(e3 < 0.2 * e2);
  }

  // Stationarity: E A f(X) = 0.
  const double s = density_expect(gamma21(), [&](double x) { return generator_apply(tg, h, x); });
  CHECK(s == Approx(0.0).margin(1e-8));
}

TEST_CASE("SaS generator in derivative form") {
  const double alpha = 1.5;
  IDLaw law = make_law("sas", {{"alpha", alpha}});
  SemigroupTarget tg = make_semigroup_target(law);
  const double c = law.require_triplet().nu.density(1.0);
  TestFunction f = gaussian_bump(1.0, 0.2, 0.7);
  for (double x : {-1.0, 0.0, 0.8}) {
    QuadratureConfig q{1e-12, 1e-10};
    auto g = [&](double u) {
      const double d = u < 1e-3 ? 2 * u * f.second_derivative(x) : f.derivative(x + u) - f.derivative(x - u);
      return d * std::pow(u, -alpha);
    };
    const double nonlocal = integrate_to_zero(g, 1.0, q).value + integrate_to_inf(g, 1.0, q).value;
    CHECK(generator_apply(tg, f, x) == Approx(-x * f.derivative(x) + c * nonlocal).margin(1e-7));
  }
}

TEST_CASE("Stein solution") {
  SemigroupTarget tg = make_semigroup_target(gamma21());
  SteinSolution z = solve_stein(tg, constant_function(0.3));
  for (double x : {-1.0, 0.0, 4.0}) {
    CHECK(z.f(x) == 0.0);
    CHECK(z.f_prime(x) == 0.0);
  }
  CHECK(stein_residual(z, {-1.0, 0.0, 1.0}) == Approx(0.0).margin(1e-14));

  SteinSolution sol = solve_stein(tg, gaussian_bump(0.25, 2.0, 1.0));
  CHECK(sol.f_prime_sup() <= 1.0);
  CHECK(sol.C_est == Approx(3 * tg.w1_mu_t(1.0)).epsilon(1e-12));
  CHECK(stein_residual(sol, uniform_grid(-5, 10, 31)) < 1e-4);
  CHECK(error_kind([&] { stein_residual(sol, {}); }) == ErrorKind::GridTooCoarse);
  SteinConfig tight;
  tight.T_cap = 1.0;
  CHECK(error_kind([&] { solve_stein(tg, gaussian_bump(0.25, 2.0, 1.0), tight); }) == ErrorKind::TailBudgetExceeded);
}
