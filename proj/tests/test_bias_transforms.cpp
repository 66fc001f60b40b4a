#include <cmath>

#include "common.hpp"
#include "levystein/bias_transforms.hpp"

using namespace levystein;

TEST_CASE("gamma size bias is Exp(beta) with m0+ = E X") {
  IDLaw g = make_law("gamma", {{"alpha", 2.0}, {"beta", 1.5}});
  SizeBiasPair sb = size_bias_pair(g);
  CHECK(sb.b0 == Approx(0.0).margin(1e-12));
  CHECK(sb.m0_plus == Approx(2.0 / 1.5).epsilon(1e-10));
  CHECK(sb.m0_minus == 0.0);
  CHECK(sb.Yminus.empty());
  for (double y : {0.1, 0.5, 1.0, 3.0}) CHECK(sb.Yplus.cdf(y) == Approx(1 - std::exp(-1.5 * y)).margin(1e-8));
  CHECK(size_bias_residual(g, sb, c2_dictionary()[2], 1'000'000, 1).passes());
}

TEST_CASE("Poisson size bias is the unit shift") {
  IDLaw p = make_law("poisson", {{"lambda", 1.3}});
  SizeBiasPair sb = size_bias_pair(p);
  CHECK(sb.b0 == Approx(0.0).margin(1e-12));
  CHECK(sb.m0_plus == Approx(1.3).epsilon(1e-12));
  CHECK(sb.Yplus.cdf(0.999) == Approx(0.0).margin(1e-12));
  CHECK(sb.Yplus.cdf(1.0) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("size bias fails loudly for SaS") {
  IDLaw s = make_law("sas", {{"alpha", 1.5}});
  CHECK(error_kind([&] { size_bias_pair(s); }) == ErrorKind::AssumptionViolated);
}

TEST_CASE("two-sided exponential zero bias density") {
  const double a = 1.0, b = 2.0;
  ZeroBias zb = zero_bias(make_law("texp", {{"alpha", a}, {"beta", b}}));
  const double k = a * a * b * b / (a * a + b * b);
  for (double t : {-2.0, -0.3, 0.2, 1.5}) {
    double oracle = k * (t > 0 ? std::exp(-a * t) / a : std::exp(b * t) / b);
    CHECK(zb.Y.density(t) == Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("gamma(2,1) zero bias total and mass") {
  ZeroBias zb = zero_bias(make_law("gamma", {{"alpha", 2.0}, {"beta", 1.0}}));
  CHECK(zb.total == Approx(2.0).epsilon(1e-10));
  CHECK(zb.Y.mass_by_quadrature() == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("symmetric measure gives symmetric zero bias") {
  ZeroBias zb = zero_bias(make_law("laplace"));
  for (double t : {0.2, 1.0, 2.5}) CHECK(zb.Y.density(t) == Approx(zb.Y.density(-t)).epsilon(1e-10));
}

TEST_CASE("SaS mixed transform") {
  MixedTransform mt = mixed_transform(make_law("sas", {{"alpha", 1.5}}));
  CHECK(mt.m_plus == Approx(mt.m_minus).epsilon(1e-10));
  CHECK(mt.m_plus / mt.m == Approx(0.5).epsilon(1e-10));
  MixedTransform st = mixed_transform(make_law("stable", {{"alpha", 1.5}, {"c1", 1.0}, {"c2", 1.0}}));
  CHECK(st.quad_mass == Approx(4.0).epsilon(1e-10));
  IDLaw s = make_law("sas", {{"alpha", 1.5}});
  CHECK(mixed_residual(s, mt, c2_dictionary()[5], 1'000'000, 2).passes());
}

TEST_CASE("zero bias through the split pair") {
  IDLaw t = make_law("texp", {{"alpha", 1.0}, {"beta", 2.0}});
  ZeroBias zb = zero_bias(t);
  CHECK(zb.mass_plus + zb.mass_minus == Approx(zb.total).epsilon(1e-12));
  CHECK(zero_bias_split_residual(t, zb, c2_dictionary()[6], 1'000'000, 3).passes());
}
