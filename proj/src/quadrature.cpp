#include "levystein/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cstdlib>
#include <string>

namespace levystein {

std::size_t effective_budget(std::size_t max_evals) {
  static const double scale = [] {
    const char* env = std::getenv("LEVYSTEIN_QUAD_BUDGET");
    if (!env) return 1.0;
    try {
      const double v = std::stod(env);
      return v >= 100 ? v / 2e6 : 1.0;
    } catch (...) {
      return 1.0;
    }
  }();
  return static_cast<std::size_t>(static_cast<double>(max_evals) * scale);
}

namespace {

template <unsigned N>
Rule symmetric_gauss() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(w[i]);
    } else {
      r.x.push_back(-x[i]);
      r.w.push_back(w[i]);
      r.x.push_back(x[i]);
      r.w.push_back(w[i]);
    }
  }
  return r;
}

KronrodRule make_gk21() {
  using K = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  KronrodRule r;
  const auto& kx = K::abscissa();
  const auto& kw = K::weights();
  const auto& gx = G::abscissa();
  const auto& gw = G::weights();
  auto gauss_weight = [&](double x) {
    for (std::size_t j = 0; j < gx.size(); ++j)
      if (std::abs(gx[j] - x) < 1e-14) return gw[j];
    return 0.0;
  };
  for (std::size_t i = 0; i < kx.size(); ++i) {
    double w = gauss_weight(kx[i]);
    if (kx[i] == 0.0) {
      r.x.push_back(0.0);
      r.wk.push_back(kw[i]);
      r.wg.push_back(w);
    } else {
      for (double s : {-1.0, 1.0}) {
        r.x.push_back(s * kx[i]);
        r.wk.push_back(kw[i]);
        r.wg.push_back(w);
      }
    }
  }
  return r;
}

}  // namespace

const KronrodRule& gk21() {
  static const KronrodRule r = make_gk21();
  return r;
}

const Rule& gauss_legendre(int n) {
  static const Rule r8 = symmetric_gauss<8>();
  static const Rule r16 = symmetric_gauss<16>();
  static const Rule r32 = symmetric_gauss<32>();
  switch (n) {
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    default: throw Error(ErrorKind::DomainError, "gauss_legendre: unsupported order " + std::to_string(n));
  }
}

}  // namespace levystein
