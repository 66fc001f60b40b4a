#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "levystein/error.hpp"

namespace levystein {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_evals = 2'000'000;
};

/// max_evals rescaled by LEVYSTEIN_QUAD_BUDGET / 2e6 when that variable is set (read once).
std::size_t effective_budget(std::size_t max_evals);

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  std::size_t evals = 0;
};

/// Fixed rule on [-1,1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// 21-point Kronrod rule with its embedded 10-point Gauss weights (zero where not a Gauss node).
struct KronrodRule {
  std::vector<double> x, wk, wg;
};

const KronrodRule& gk21();
const Rule& gauss_legendre(int n);  // n in {8, 16, 32}

namespace detail {

inline double mag(double v) { return std::abs(v); }
inline double mag(const std::complex<double>& v) { return std::abs(v); }

template <class T, class F>
std::pair<T, double> gk_segment(F& f, double a, double b) {
  const KronrodRule& r = gk21();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T k{}, g{};
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    T v = f(c + h * r.x[i]);
    k += r.wk[i] * v;
    if (r.wg[i] != 0.0) g += r.wg[i] * v;
  }
  k *= h;
  g *= h;
  return {k, mag(k - g)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod on a finite interval; throws QuadratureFailure on budget exhaustion.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {})
    -> QuadResult<decltype(f(a))> {
  using T = decltype(f(a));
  QuadResult<T> res;
  if (a == b) return res;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  struct Seg {
    double a, b;
    T v;
    double e;
    bool operator<(const Seg& o) const { return e < o.e; }
  };
  std::priority_queue<Seg> heap;
  auto first = detail::gk_segment<T>(f, a, b);
  res.evals = 21;
  heap.push({a, b, first.first, first.second});
  T total = first.first;
  double err = first.second;
  std::size_t splits = 0;
  const std::size_t budget = effective_budget(cfg.max_evals);
  while (err > std::max(cfg.abs_tol, cfg.rel_tol * detail::mag(total))) {
    if (res.evals + 42 > budget) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "budget of %zu evaluations exhausted on [%.6g, %.6g], error estimate %.3g",
                    budget, a, b, err);
      throw Error(ErrorKind::QuadratureFailure, msg);
    }
    Seg s = heap.top();
    double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b)) break;  // interval at machine resolution
    heap.pop();
    auto l = detail::gk_segment<T>(f, s.a, m);
    auto r = detail::gk_segment<T>(f, m, s.b);
    res.evals += 42;
    total += l.first + r.first - s.v;
    err += l.second + r.second - s.e;
    heap.push({s.a, m, l.first, l.second});
    heap.push({m, s.b, r.first, r.second});
    if (++splits % 4096 == 0) {
      // recompute to shed accumulated rounding in the running sums
      std::vector<Seg> all;
      all.reserve(heap.size());
      T t{};
      double e = 0;
      while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
      }
      for (auto& s2 : all) {
        t += s2.v;
        e += s2.e;
        heap.push(s2);
      }
      total = t;
      err = e;
    }
  }
  res.value = sign * total;
  res.error = err;
  return res;
}

namespace detail {

// Sum of panel integrals over a geometric sequence of panels, stopping once the
// geometric remainder estimate is negligible. next(k) returns panel k's bounds.
template <class F, class NextPanel>
auto panel_series(F& f, NextPanel next, const QuadratureConfig& cfg, int max_panels,
                  const char* what) -> QuadResult<decltype(f(1.0))> {
  using T = decltype(f(1.0));
  QuadResult<T> res;
  QuadratureConfig local = cfg;
  double prev = -1.0;
  int quiet = 0, zeros = 0;
  bool seen = false;
  for (int k = 0; k < max_panels; ++k) {
    auto [lo, hi] = next(k);
    local.abs_tol = std::max(cfg.abs_tol * 0.05, 1e-300);
    local.max_evals = cfg.max_evals > res.evals ? cfg.max_evals - res.evals : 0;
    auto p = integrate(f, lo, hi, local);
    res.value += p.value;
    res.error += p.error;
    res.evals += p.evals;
    double m = mag(p.value);
    double tol = std::max(cfg.abs_tol, cfg.rel_tol * mag(res.value));
    if (m == 0.0) {
      if (++zeros >= (seen ? 4 : 64)) return res;
      prev = 0.0;
      continue;
    }
    zeros = 0;
    seen = true;
    if (prev > 0.0) {
      double r = m / prev;
      if (r < 0.95 && m * r / (1.0 - r) < 0.1 * tol) {
        if (++quiet >= 2) {
          res.error += m * r / (1.0 - r);
          return res;
        }
      } else {
        quiet = 0;
      }
    }
    prev = m;
  }
  throw Error(ErrorKind::QuadratureFailure, std::string(what) + ": panel series did not settle");
}

}  // namespace detail

/// Integral over (0, a], a>0, on dyadic panels shrinking toward 0 (integrable singularity at 0).
template <class F>
auto integrate_to_zero(F&& f, double a, const QuadratureConfig& cfg = {})
    -> QuadResult<decltype(f(a))> {
  auto next = [a](int k) {
    return std::pair<double, double>{std::ldexp(a, -(k + 1)), std::ldexp(a, -k)};
  };
  return detail::panel_series(f, next, cfg, 1000, "integrate_to_zero");
}

/// Integral over [a, inf), a>0, on doubling panels.
template <class F>
auto integrate_to_inf(F&& f, double a, const QuadratureConfig& cfg = {})
    -> QuadResult<decltype(f(a))> {
  auto next = [a](int k) {
    return std::pair<double, double>{std::ldexp(a, k), std::ldexp(a, k + 1)};
  };
  return detail::panel_series(f, next, cfg, 1000, "integrate_to_inf");
}

}  // namespace levystein
