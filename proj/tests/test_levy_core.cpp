#include <cmath>
#include <numbers>

#include "common.hpp"
#include "levystein/id_law.hpp"
#include "levystein/stein_ops.hpp"

using namespace levystein;

TEST_CASE("Poisson triplet charfn at pi") {
  LevyTriplet tr;
  tr.b = 1.0;  // int_{|u|<=1} u nu = 1 for delta_1
  tr.nu.atoms = {{1.0, 1.0}};
  std::complex<double> oracle = 0.0;
  double term = std::exp(-1.0);
  for (int k = 0; k <= 50; ++k) {
    oracle += term * std::polar(1.0, std::numbers::pi * k);
    term /= (k + 1);
  }
  auto phi = charfn_from_triplet(tr, std::numbers::pi);
  CHECK(std::abs(phi - oracle) < 1e-12);
  CHECK(phi.real() == Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(std::abs(charfn_from_triplet(tr, 0.0) - 1.0) < 1e-15);
}

TEST_CASE("SaS closed form against triplet quadrature") {
  IDLaw law = make_law("sas", {{"alpha", 1.5}});
  auto q = charfn_from_triplet(law.require_triplet(), 1.0);
  CHECK(std::abs(q - std::exp(-1.0)) < 1e-8);
  CHECK(std::abs(law.charfn(1.0) - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("representation conversions") {
  IDLaw g = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.5}});
  const LevyTriplet& tr = g.require_triplet();
  CHECK(convert_representation(tr, Representation::Drift) == Approx(0.0).margin(1e-12));
  CHECK(convert_representation(tr, Representation::Standard) == Approx(2.0 * (1 - std::exp(-1.5)) / 1.5).epsilon(1e-10));
  CHECK(convert_representation(tr, Representation::Center) == Approx(2.0 / 1.5).epsilon(1e-10));

  IDLaw lap = make_law("laplace");
  CHECK(convert_representation(lap.require_triplet(), Representation::Standard) == Approx(0.0).margin(1e-12));
  CHECK(convert_representation(lap.require_triplet(), Representation::Drift) == Approx(0.0).margin(1e-12));
}

TEST_CASE("means") {
  CHECK(mean_of(make_law("nbin0", {{"r", 3.0}, {"p", 0.4}})) == Approx(3.0 * 0.6 / 0.4).epsilon(1e-10));
  CHECK(mean_of(make_law("laplace")) == Approx(0.0).margin(1e-12));
  IDLaw g = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
  CHECK(mean_of(g) == Approx(2.0).epsilon(1e-12));
  Sample s = sample(g, 1'000'000, 7);
  double m = 0.0;
  for (double v : s.values) m += v;
  m /= s.values.size();
  CHECK(std::abs(m - 2.0) <= 4.0 * std::sqrt(2.0) / 1000.0);
  // nu(du) = u^{-1.8} du on u > 1 has no first moment.
  LevyTriplet heavy;
  heavy.nu.density = [](double u) { return u > 1 ? std::pow(u, -1.8) : 0.0; };
  heavy.nu.plus = {1.0, kInf, TailKind::Power, 0.8, 0.0};
  CHECK(error_kind([&] { mean_of(law_from_triplet("heavy", heavy)); }) == ErrorKind::InfiniteMean);
}

TEST_CASE("stable constants") {
  StableConstants k = stable_constants(1.5, 1.0, 1.0);
  CHECK(k.c1_alpha == Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(k.c1_alpha == k.c2_alpha);
  CHECK(k.center == 0.0);
  CHECK(stable_constants(1.5, 2.0, 1.0).center != 0.0);
}

TEST_CASE("sampling is deterministic and matches the SaS charfn") {
  IDLaw law = make_law("sas", {{"alpha", 1.5}});
  Sample a = sample(law, 1'000'000, 11), b = sample(law, 1'000'000, 11);
  CHECK(a.values == b.values);
  double re = 0.0;
  for (double v : a.values) re += std::cos(v);
  re /= a.values.size();
  CHECK(std::abs(re - std::exp(-1.0)) < 4.0 / 1000.0);
}

TEST_CASE("catalog rejects bad input") {
  CHECK(error_kind([] { make_law("nosuchlaw"); }) == ErrorKind::ConfigInvalid);
  CHECK(error_kind([] { make_law("gamma", {{"alpha", -1.0}, {"beta", 1.0}}); }).has_value());
  CHECK(catalog_names().size() == 13);
}

TEST_CASE("stable density far out agrees with direct inversion") {
  using cd = std::complex<double>;
  for (IDLaw law : {make_law("sas", {{"alpha", 1.5}}), make_law("stable", {{"alpha", 1.5}, {"c1", 1.0}, {"c2", 0.5}})})
    for (double x : {-60.0, 25.0, 60.0}) {
      auto g = [&](double t) { return std::real(std::exp(law.exponent(t) - cd(0.0, t * x))); };
      const double q = integrate(g, 0.0, 60.0, QuadratureConfig{1e-15, 1e-12, 20'000'000}).value / std::numbers::pi;
      CHECK(law.density(x) == Approx(q).epsilon(1e-9));
    }
}
