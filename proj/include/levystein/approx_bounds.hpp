#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levystein/bias_transforms.hpp"
#include "levystein/fourier_metrics.hpp"
#include "levystein/id_law.hpp"
#include "levystein/report.hpp"

namespace levystein {

/// Exponent p of |phi(t)| int_0^|t| ds/|phi(s)| <= C |t|^p and the constant, when known.
struct DawsonExponent {
  double C = 0.0;  // 0 means unknown; no Kolmogorov bound is then derived
  double p = 1.0;
};

/// Delta_n = |m0+_n - m0+_inf| + |m0-_n - m0-_inf| + m0+_inf W1(Y+_n, Y+_inf) + m0-_inf W1(Y-_n, Y-_inf).
BoundReport delta_sizebias(const IDLaw& law_n, const IDLaw& law_inf, const DawsonExponent& d = {});

enum class W1Route { Cdf, DoubleIntegral };
/// Delta_n = |eta_n - eta_inf| + |E X_n - E X_inf| + W1(Y_n, Y_inf), eta = int u^2 nu.
BoundReport delta_zerobias(const IDLaw& law_n, const IDLaw& law_inf, W1Route route = W1Route::Cdf,
                           const DawsonExponent& d = {});

/// |E X_n - E X_inf| + weighted L1 gaps of the k-functions, split at +-1.
BoundReport delta_selfdecomp(const IDLaw& law_n, const IDLaw& law_inf, const DawsonExponent& d = {});

/// 2 int_0^inf |sum_k (lam_inf_k^2 e^{-t/(2 lam_inf_k)} - lam_n_k^2 e^{-t/(2 lam_n_k)})| dt, all lambdas > 0.
double chaos_delta(const std::vector<double>& lam_n, const std::vector<double>& lam_inf);

/// lam_k = c 2^{-k}, k = 1..K, with c fixed by sum lam^2 = 1/2.
std::vector<double> geometric_chaos_eigenvalues(std::size_t K = 60);
/// First n of `lam`, rescaled so that the squares again sum to sum(lam^2).
std::vector<double> truncate_rescaled(const std::vector<double>& lam, std::size_t n);

// ---------------------------------------------------------------------------
// Compound Poisson approximation

/// Distinguished logarithm of phi at t by phase unwrapping from 0; PhaseUnwrapFailure when the
/// step needed to keep increments below pi/2 drops under min_step.
std::complex<double> unwrap_log(const CharFn& phi, double t, double step = 0.05, double min_step = 1e-9);

/// exp(n (phi^{1/n} - 1)) using the law's distinguished logarithm (unwrapped when force_unwrap).
std::complex<double> cpa_charfn(const IDLaw& base, double n, double t, bool force_unwrap = false);

enum class CpaVariant { L1, L2, Stable, SaS };
/// Structural rate n^{-exponent}; the absolute constant is left at 1 and stated in the notes.
BoundReport cpa_bounds(const IDLaw& base, double n, CpaVariant variant, const DawsonExponent& d = {});
double cpa_exponent(CpaVariant variant, double p, double alpha);

struct RatePoint {
  double n = 0.0;
  double dK = 0.0;
  double grid_error = 0.0;
};
struct RateTable {
  std::vector<RatePoint> rows;
  double slope = 0.0;
  double predicted = 0.0;
};

/// d_K(CPA_n(base), base) by the Fourier-difference route.
RateTable cpa_rate_experiment(const IDLaw& base, const std::vector<double>& n_grid,
                              const std::vector<double>& x_grid, const FourierDiffConfig& fd = {});

/// Pareto sums n^{-1/alpha} sum xi_i against exp(-|t|^alpha); phi_1 by quadrature.
RateTable pareto_to_stable_experiment(double alpha, const std::vector<double>& n_grid,
                                      const std::vector<double>& x_grid, const FourierDiffConfig& fd = {});

/// Default x-grid for the rate experiments.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

// ---------------------------------------------------------------------------
// General weak limit theorem

/// Law of one summand: density on (lo, hi) plus atoms, or a sampler only (moments then by MC).
struct SummandLaw {
  std::string name;
  std::function<double(double)> density;
  double lo = -kInf, hi = kInf;
  std::vector<Atom> atoms;
  std::function<double(RandomStream&)> draw;
  std::size_t mc_samples = 100000;
  std::uint64_t mc_seed = 1;

  /// E g(Z) 1_{a < Z <= b}; by quadrature when a density is present.
  double expect(const std::function<double(double)>& g, double a = -kInf, double b = kInf) const;
  bool analytic() const { return static_cast<bool>(density) || (atoms.size() > 0 && !draw); }
};

SummandLaw exponential_summand(double rate);
SummandLaw summand_from_law(const IDLaw& law, double lo, double hi);

/// S_n = b sum_{k<=n} Z_k + c, with Z_k iid (one summand) or given row by row.
struct SumScheme {
  std::vector<SummandLaw> summands;
  double b = 1.0, c = 0.0;
  std::size_t n = 1;
  bool iid() const { return summands.size() == 1; }
  const SummandLaw& row(std::size_t k) const { return iid() ? summands.front() : summands.at(k); }
  /// max_k P(|b Z_k| > eps).
  double null_array_max(double eps) const;
  double draw_sum(RandomStream& r) const;
};

/// Part (ii) data: tail/small-ball exponents and constants; C_{gamma,beta} is taken as C1 + C2.
struct GwltHolder {
  double beta = 0.0, gamma = 0.0, C1 = 0.0, C2 = 0.0;
};

/// Six-term bound on d_W2(S_n, X). Part (i) when holder is empty, else part (ii).
BoundReport gwlt_bound(const SumScheme& scheme, const IDLaw& target, double N,
                       const std::optional<GwltHolder>& holder = std::nullopt);

/// K_k(t,N) = E[b Z 1_{|bZ|<=N} (1_{0<=t<=bZ} - 1_{bZ<=t<=0})].
double summand_kernel(const SummandLaw& z, double b, double t, double N);

/// max over the C2 dictionary of |E h(S) - E h(X)| minus 3 joint standard errors (floored at 0).
struct Dw2Lower {
  double estimate = 0.0;
  double raw = 0.0;
  double stderr_ = 0.0;
  std::string function;
};
Dw2Lower dw2_lower_estimate(const std::function<double(RandomStream&)>& draw_s, const IDLaw& target,
                            std::size_t samples, std::uint64_t seed);

}  // namespace levystein
