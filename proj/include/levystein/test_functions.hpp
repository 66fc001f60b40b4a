#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "levystein/levy_measure.hpp"

namespace levystein {

struct TestFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> d1;  // may be empty
  std::function<double(double)> d2;  // may be empty
  double lip_bound = kInf;
  double sup_bound = kInf;
  double d2_bound = kInf;
  bool smooth = true;  // d1 continuous everywhere (false for clipped ramps)
  /// Fourier transform xi -> int h(y) e^{-i xi y} dy, when known in closed form.
  std::function<std::complex<double>(double)> fourier;
  /// |fourier| < e^{-40} beyond this frequency.
  double fourier_cutoff = 0.0;

  double operator()(double x) const { return f(x); }
  double derivative(double x) const;  // throws MissingDerivative
  double second_derivative(double x) const;
};

/// 20 bounded Lipschitz functions with ||f||_Lip <= 1 and stated sup bounds.
const std::vector<TestFunction>& blip_dictionary();

/// 20 smooth functions with ||h||, ||h'||, ||h''|| <= 1 (sampled on [-60, 60] and rescaled).
const std::vector<TestFunction>& c2_dictionary();

/// a exp(-(x-m)^2 / (2 s^2)) with closed-form derivatives and transform.
TestFunction gaussian_bump(double a, double m, double s);

/// Bumps scaled so that all of h, h', h'' are bounded by 1.
std::vector<TestFunction> fourier_dictionary();

TestFunction constant_function(double c);
TestFunction linear_function(double slope, double intercept);

/// Largest difference quotient of f over a uniform grid with the given step.
double sampled_lipschitz(const std::function<double(double)>& f, double lo, double hi, double step);

/// x -> min_k (f(k) + |x - k|) over the integers k in [k0, k1].
TestFunction lattice_extension(const std::vector<double>& values, long k0);

/// Standard mollifier rho(x) = k exp(-1/(1-x^2)) on (-1, 1).
struct Mollifier {
  double k;       // normalising constant
  double rho0;    // rho(0)
  double m1;      // int |x| rho(x) dx
  double dl1;     // int |rho'| = 2 rho(0)
  double operator()(double x) const;
};
const Mollifier& standard_mollifier();

/// h * rho_eps, with the derivative bound inflated by ||rho_eps'||_1 for h''.
TestFunction mollify(const TestFunction& h, double eps);

}  // namespace levystein
