#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "levystein/id_law.hpp"
#include "levystein/test_functions.hpp"

namespace levystein {

struct Estimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
  bool passes(double k = 4.0) const { return std::abs(estimate) <= k * stderr_; }
};

/// Small-jump Taylor cutoff used when the Lévy density is non-integrable against |u| at 0.
inline constexpr double kTaylorCut = 1e-6;

/// int (F(x+u) - F(x) 1_{|u|<=1 or compensate_all}) u nu(du).
/// dF, d2F are used for the Taylor expansion below kTaylorCut (either may be empty).
double jump_term(const LevyMeasure& nu, const std::function<double(double)>& F,
                 const std::function<double(double)>& dF, const std::function<double(double)>& d2F, double x,
                 bool compensate_all, const QuadratureConfig& cfg = {});

/// int_1^inf F(x + s v) w(v) dv for w(v) ~ C v^{-p}, p > 1: panels up to 2^17, then the
/// Cesàro mean of F over one more panel times the power-law remainder.
double power_tail(const std::function<double(double)>& F, double x, int s, const std::function<double(double)>& w,
                  double p, const QuadratureConfig& cfg = {});

/// (x - b) f(x) - sigma^2 f'(x) - int (f(x+u) - f(x) 1_{|u|<=1}) u nu(du).
double apply_Agen(const TestFunction& f, double x, const IDLaw& law, const QuadratureConfig& cfg = {});

/// Closed-form specialisations: poisson, nbin0, nbin, cp, laplace, gamma, stable, sas.
/// Unavailable for other names.
double specialized_operator(const TestFunction& f, double x, const IDLaw& law, const QuadratureConfig& cfg = {});

/// Monte Carlo estimate of E A_gen f(X), one per function, with shared draws.
std::vector<Estimate> identity_residuals(const IDLaw& law, const std::vector<TestFunction>& fs, std::size_t n,
                                         std::uint64_t seed);
Estimate identity_residual(const IDLaw& law, const TestFunction& f, std::size_t n, std::uint64_t seed);

/// E X f(X) - E(f(X+Y) - f(X-Y)) with Y ~ Exp(1), X standard Laplace.
Estimate laplace_exponential_residual(const TestFunction& f, std::size_t n, std::uint64_t seed);

double marchaud_plus(const TestFunction& f, double x, double beta, const QuadratureConfig& cfg = {});
double marchaud_minus(const TestFunction& f, double x, double beta, const QuadratureConfig& cfg = {});

/// d_alpha int (f(x+u) + f(x-u) - 2 f(x)) u^{-1-alpha} du over u > 0.
double fractional_laplacian(const TestFunction& f, double x, double alpha, const QuadratureConfig& cfg = {});
/// (d_alpha / alpha) int_0^inf (f'(x+u) - f'(x-u)) u^{-alpha} du.
double fractional_laplacian_derivative_form(const TestFunction& f, double x, double alpha,
                                            const QuadratureConfig& cfg = {});

/// (f', f'') as a test function; needs f.d1.
TestFunction derivative_of(const TestFunction& f);

/// E X f(X) - c2a E D+ f(X) + c1a E D- f(X) - (c1 - c2)/(alpha - 1) E f(X), randomised Marchaud integrals.
Estimate stable_identity_residual(double alpha, double c1, double c2, const TestFunction& f, std::size_t n,
                                  std::uint64_t seed);

/// E X f'(X) - alpha E Delta^{alpha/2} f(X) for the unit symmetric stable law, with randomised
/// second differences.
Estimate fractional_laplacian_residual(double alpha, const TestFunction& f, std::size_t n, std::uint64_t seed);

/// Monte Carlo mean and standard error of g over blocks of draws.
Estimate mc_mean(std::size_t n, std::uint64_t seed, const std::function<double(RandomStream&)>& g);

}  // namespace levystein
