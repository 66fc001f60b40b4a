#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "levystein/fourier_metrics.hpp"
#include "levystein/id_law.hpp"
#include "levystein/stein_ops.hpp"
#include "levystein/tabulated_law.hpp"
#include "levystein/test_functions.hpp"

namespace levystein {

/// Self-decomposable target with its Ornstein-Uhlenbeck-type semigroup.
struct SemigroupTarget {
  IDLaw law;
  double mean = 0.0;

  /// phi(xi) / phi(e^{-t} xi).
  std::complex<double> ratio(double xi, double t) const;
  /// (psi(u) - psi(e^t u)) / |u|, the Lévy density of mu_t; empty without a k-function.
  std::function<double(double)> mu_t_levy(double t) const;
  /// E h(X) by Fourier quadrature (h needs a transform).
  double expect(const TestFunction& h) const;
  /// W1(mu_t, mu_X) from the Fourier transform of the CDF difference on an FFT grid.
  double w1_mu_t(double t, std::size_t N = 1 << 16, double dz = 0.01) const;
};

/// Needs self_decomposable, a finite mean and a Lévy exponent.
SemigroupTarget make_semigroup_target(const IDLaw& law);

/// P_t h(x) = (1/2pi) int hhat(xi) r_t(xi) e^{i xi x e^{-t}} dxi; h needs a transform.
double pt_apply(const SemigroupTarget& target, const TestFunction& h, double x, double t,
                const QuadratureConfig& cfg = {1e-13, 1e-11, 2'000'000});

/// P_t h as a test function with its own transform e^t hhat(e^t eta) r_t(e^t eta).
TestFunction pt_function(const SemigroupTarget& target, const TestFunction& h, double t);

/// Compound Poisson sampler of mu_t (jumps from mu_t_levy, drift b0 (1 - e^{-t}), Gaussian part).
class MuTSampler {
 public:
  MuTSampler(const SemigroupTarget& target, double t);
  double draw(RandomStream& r) const;
  double rate() const { return rate_; }

 private:
  double rate_ = 0.0, drift_ = 0.0, sd_ = 0.0;
  TabulatedLaw jumps_;
};

/// P_t h(x) as the mean of h(x e^{-t} + Y_t); NoMuTSampler when mu_t has infinite Lévy mass.
Estimate pt_apply_mc(const SemigroupTarget& target, const TestFunction& h, double x, double t, std::size_t n,
                     std::uint64_t seed);

/// (E X - x) f'(x) + int (f'(x+u) - f'(x)) u nu(du).
double generator_apply(const SemigroupTarget& target, const TestFunction& f, double x,
                       const QuadratureConfig& cfg = {});

struct SteinConfig {
  std::size_t N = 8192;   // FFT size
  double dz = 0.025;      // spatial step of the FFT grid
  double t0 = 1e-3;       // first geometric time node
  double ratio = 1.15;    // Gauss-Legendre 8 on [t0 r^k, t0 r^{k+1}]
  double tail_tol = 1e-6; // EST tail at x = 0
  double T_cap = 200.0;
};

/// f_h with f_h' = -int e^{-t} P_t h' dt and f_h'' = -int e^{-2t} P_t h'' dt; immutable once built.
class SteinSolution {
 public:
  SemigroupTarget target;
  TestFunction h;
  double Eh = 0.0;
  double time_truncation = 0.0;
  double C_est = 0.0;       // 3 W1(mu_1, mu_X)
  double tail_bound = 0.0;  // e^{-T} |x| + 3 C e^{-T/3} at x = 0

  double f(double x) const;
  double f_prime(double x) const;
  double f_second(double x) const;
  double f_prime_sup() const;
  /// Tabulated values are trusted for |x| <= this; beyond it f' and f'' are summed node by node.
  double table_half_width() const { return half_; }
  /// Columns x, f, f', residual.
  void export_csv(std::ostream& os, const std::vector<double>& grid) const;

 private:
  friend SteinSolution solve_stein(const SemigroupTarget&, const TestFunction&, const SteinConfig&);
  struct Node {
    double t, w;  // quadrature weight
  };
  struct Tables {
    std::vector<Node> nodes;
    std::vector<std::vector<double>> g1, g2;  // per node, on the z-grid
    std::vector<double> F0, F1, F2;           // f, f', f'' on the z-grid
  };
  bool zero_ = false;  // h constant
  std::size_t N_ = 0;
  double dz_ = 0.0, half_ = 0.0;  // trusted region |z| <= half_
  std::shared_ptr<const Tables> tab_;
  double table(const std::vector<double>& F, double x) const;
  double outside(int order, double x) const;
};

/// TailBudgetExceeded when the time truncation needed exceeds T_cap.
SteinSolution solve_stein(const SemigroupTarget& target, const TestFunction& h, const SteinConfig& cfg = {});

/// max over the grid of the Stein-equation residual; GridTooCoarse for an empty grid.
double stein_residual(const SteinSolution& sol, const std::vector<double>& grid,
                      const QuadratureConfig& cfg = {1e-11, 1e-9, 2'000'000});

/// 1_{[0,N]}(t) int_t^N u nu(du) + 1_{[-N,0]}(t) int_{-N}^t (-u) nu(du).
double kernel_K(const LevyMeasure& nu, double t, double N);
/// Stable kernel from integrating u nu(du) directly: c1 (t^{1-a} - N^{1-a})/(a-1) on (0,N].
double kernel_K_stable(double alpha, double c1, double c2, double t, double N);
/// Same with the positive-part exponent a-1 in place of 1-a; comparison only, not used in bounds.
double kernel_K_stable_alt(double alpha, double c1, double c2, double t, double N);
/// int_{-N}^{N} K(t,N) dt by quadrature.
double kernel_integral(const LevyMeasure& nu, double N);

struct HolderResult {
  bool lipschitz = false;
  double exponent = 1.0;  // beta/(beta+gamma) in the Hölder case
  double beta = 0.0, gamma = 0.0, C1 = 0.0, C2 = 0.0;
};
/// Lipschitz case when int_{|u|<=1} |u| nu < inf, else fitted tail and small-ball power laws.
HolderResult holder_exponent(const LevyMeasure& nu);

}  // namespace levystein
