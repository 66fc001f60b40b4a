#include <cmath>

#include "common.hpp"
#include "levystein/stein_ops.hpp"

using namespace levystein;

namespace {

TestFunction from_lambda(std::function<double(double)> f, std::function<double(double)> d1 = {}) {
  TestFunction t;
  t.name = "custom";
  t.f = std::move(f);
  t.d1 = std::move(d1);
  t.lip_bound = 1.0;
  return t;
}

}  // namespace

TEST_CASE("Poisson operator reduces to x f(x) - lambda f(x+1)") {
  IDLaw p = make_law("poisson", {{"lambda", 1.0}});
  TestFunction one = constant_function(1.0);
  CHECK(apply_Agen(one, 2.0, p) == Approx(1.0).epsilon(1e-12));
  CHECK(specialized_operator(one, 2.0, p) == Approx(1.0).epsilon(1e-12));
  TestFunction s = from_lambda([](double x) { return std::min(std::sin(x), 1.0); });
  for (double x : {-1.0, 0.0, 0.4, 2.0}) CHECK(apply_Agen(s, x, p) == Approx(x * s(x) - s(x + 1)).margin(1e-12));
  CHECK(apply_Agen(constant_function(0.0), 0.3, p) == 0.0);
}

TEST_CASE("gamma operator against an independent quadrature") {
  const double a = 2.0, b = 1.0;
  IDLaw g = make_law("gamma", {{"alpha", a}, {"beta", b}});
  TestFunction f = c2_dictionary()[3];
  for (double x : {0.5, 2.0, 4.0}) {
    QuadratureConfig q{1e-13, 1e-11};
    double near = integrate([&](double u) { return (f(x + u) - f(x)) * std::exp(-b * u); }, 0.0, 1.0, q).value;
    double far = integrate_to_inf([&](double u) { return f(x + u) * std::exp(-b * u); }, 1.0, q).value;
    double oracle = x * f(x) - a * (1 - std::exp(-b)) / b * f(x) - a * (near + far);
    CHECK(apply_Agen(f, x, g) == Approx(oracle).margin(1e-9));
  }
}

TEST_CASE("Poisson identity residual with the exact pmf oracle") {
  IDLaw p = make_law("poisson", {{"lambda", 1.0}});
  TestFunction f = from_lambda([](double x) { return std::min(std::sin(x), 1.0); });
  double exact = 0.0, pk = std::exp(-1.0);
  for (int k = 0; k < 60; ++k) {
    exact += pk * (k * f(k) - f(k + 1));
    pk /= (k + 1);
  }
  CHECK(std::abs(exact) < 1e-14);
  Estimate e = identity_residual(p, f, 1'000'000, 7);
  CHECK(e.passes(4.0));
  CHECK(e.n == 1'000'000);
}

TEST_CASE("Laplace: two estimators of the same identity") {
  TestFunction f = blip_dictionary()[2];
  Estimate a = identity_residual(make_law("laplace"), f, 1'000'000, 3);
  Estimate b = laplace_exponential_residual(f, 1'000'000, 4);
  CHECK(a.passes());
  CHECK(b.passes());
  CHECK(std::abs(a.estimate - b.estimate) <= 4 * std::hypot(a.stderr_, b.stderr_));
}

TEST_CASE("Marchaud derivatives") {
  TestFunction sine = from_lambda([](double x) { return std::sin(x); }, [](double x) { return std::cos(x); });
  CHECK(marchaud_plus(constant_function(2.0), 0.3, 0.5) == Approx(0.0).margin(1e-14));
  CHECK(marchaud_plus(sine, 0.0, 0.5) == Approx(-marchaud_minus(sine, 0.0, 0.5)).margin(1e-8));
}

TEST_CASE("fractional Laplacian representations agree") {
  TestFunction bump = gaussian_bump(1.0, 0.3, 0.8);
  for (double x : {-1.0, 0.0, 0.5, 2.0})
    CHECK(fractional_laplacian(bump, x, 1.5) == Approx(fractional_laplacian_derivative_form(bump, x, 1.5)).margin(1e-8));
  CHECK(fractional_laplacian(linear_function(0.7, 1.0), 0.4, 1.5) == Approx(0.0).margin(1e-12));
}

TEST_CASE("stable identity residuals") {
  TestFunction th = from_lambda([](double x) { return std::tanh(x); },
                                [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); });
  CHECK(stable_identity_residual(1.5, 2.0, 1.0, th, 1'000'000, 5).passes());
  CHECK(stable_identity_residual(1.5, 1.0, 1.0, c2_dictionary()[1], 1'000'000, 6).passes());
  CHECK(fractional_laplacian_residual(1.5, c2_dictionary()[4], 1'000'000, 8).passes());
}

TEST_CASE("specialized operators are unavailable outside the closed-form list") {
  IDLaw t = make_law("texp", {{"alpha", 1.0}, {"beta", 2.0}});
  CHECK(error_kind([&] { specialized_operator(c2_dictionary()[0], 0.0, t); }) == ErrorKind::Unavailable);
}
