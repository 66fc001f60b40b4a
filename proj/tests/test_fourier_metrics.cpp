#include <cmath>
#include <numbers>

#include "common.hpp"
#include "levystein/approx_bounds.hpp"
#include "levystein/fourier_metrics.hpp"

using namespace levystein;

namespace {
double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
}  // namespace

TEST_CASE("Gil-Pelaez inversion") {
  CHECK(invert_cdf([](double t) { return std::complex<double>(std::exp(-t * t / 2)); }, 0.0) ==
        Approx(0.5).margin(1e-10));
  CdfInverter cauchy([](double t) { return std::complex<double>(std::exp(-std::abs(t))); });
  CHECK(cauchy(1.0) == Approx(0.75).margin(1e-8));
  CHECK(cauchy(-2.0) == Approx(0.5 + std::atan(-2.0) / std::numbers::pi).margin(1e-8));
  IDLaw s = make_law("sas", {{"alpha", 1.5}});
  CHECK(invert_cdf([&](double t) { return s.charfn(t); }, 0.0) == Approx(0.5).margin(1e-10));
}

TEST_CASE("Kolmogorov distances") {
  auto n0 = [](double t) { return std::complex<double>(std::exp(-t * t / 2)); };
  auto n1 = [](double t) { return std::exp(std::complex<double>(-t * t / 2, 0.1 * t)); };
  auto grid = uniform_grid(-4, 4, 161);
  CHECK(kolmogorov_distance(n0, n0, grid).value == Approx(0.0).margin(1e-12));
  const double oracle = Phi(0.05) - Phi(-0.05);
  CHECK(kolmogorov_distance(n0, n1, grid).value == Approx(oracle).margin(1e-8));
  CHECK(kolmogorov_distance_fourier(n0, n1, grid).value == Approx(oracle).margin(1e-8));
}

TEST_CASE("W1 distances") {
  auto e1 = [](double x) { return x > 0 ? 1 - std::exp(-x) : 0.0; };
  auto e2 = [](double x) { return x > 0 ? 1 - std::exp(-2 * x) : 0.0; };
  CHECK(w1_distance(e1, e2) == Approx(0.5).epsilon(1e-8));
  CHECK(w1_distance(e1, e1) == Approx(0.0).margin(1e-14));
  CHECK(w1_distance(Phi, [](double x) { return Phi(x - 0.3); }) == Approx(0.3).epsilon(1e-8));
}

TEST_CASE("Dawson functional bounds") {
  IDLaw g = make_law("gamma", {{"alpha", 1.0}, {"beta", 2.0}});
  IDLaw n = make_law("normal");
  for (double t : {0.1, 1.0, 3.0, 10.0, 40.0}) {
    CHECK(dawson_functional(g, t) <= t + 1e-10);
    CHECK(dawson_functional(n, t) <= 2 * t / (1 + t * t) + 1e-10);
  }
  DawsonFit fit = fit_stable_dawson(1.5);
  CHECK(fit.C > 0);
  CHECK(fit.overshoot < 1e-3);
}

TEST_CASE("Esseen bound") {
  BoundReport zero = esseen_bound([](double) { return 0.0; }, 2.0, 0.4);
  CHECK(zero.total() == Approx(kEsseenC2 * 0.4 / 2.0).epsilon(1e-12));
  BoundReport lin = esseen_bound([](double t) { return std::abs(t); }, 1.0, 1.0);
  CHECK(lin.total() == Approx(2 * kEsseenC1 + kEsseenC2).epsilon(1e-10));
  // eps = Delta |t|^p gives T* proportional to Delta^{-1/(p+2)}.
  const double p = 1.0;
  auto Topt = [&](double delta) {
    return esseen_optimal([&](double t) { return delta * std::pow(std::abs(t), p + 1); }, 1.0).T;
  };
  const double slope = std::log(Topt(1e-6) / Topt(1e-3)) / std::log(1e-6 / 1e-3);
  CHECK(slope == Approx(-1.0 / (p + 2)).margin(1e-3));
}

TEST_CASE("smoothing transfers") {
  CHECK(smoothing_transfers(0.0, 0.5, 0.0).dw1_from_dw2 == 0.0);
  CHECK(smoothing_transfers(0.1, 0.5, 0.02).dk_from_w1 == Approx(std::sqrt(0.02)).epsilon(1e-12));
  Transfers a = smoothing_transfers(0.01, 0.5, 0.02), b = smoothing_transfers(0.02, 0.5, 0.04);
  CHECK(b.dw1_from_dw2 >= a.dw1_from_dw2);
  CHECK(b.dk_from_w1 >= a.dk_from_w1);
  CHECK(smoothing_transfers(0.01, 0.8, 0.02).dk_from_w1 >= a.dk_from_w1);
}

TEST_CASE("log-log slope") {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3 * std::pow(v, -0.7));
  CHECK(loglog_slope(x, y) == Approx(-0.7).epsilon(1e-12));
}
