#pragma once

#include <complex>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "levystein/id_law.hpp"
#include "levystein/report.hpp"

namespace levystein {

using CharFn = std::function<std::complex<double>(double)>;
using CdfFn = std::function<double(double)>;

struct CharFnGrid {
  std::vector<double> ts;  // symmetric about 0
  std::vector<std::complex<double>> values;
  std::string source;

  /// 2*n_half+1 equispaced points on [-T, T].
  static CharFnGrid sample(const CharFn& cf, double T, std::size_t n_half, std::string source);
  /// Columns t, re, im.
  void export_csv(std::ostream& os) const;
};

/// Columns x, F.
void export_cdf_csv(std::ostream& os, const CdfFn& F, const std::vector<double>& xs);

struct InversionConfig {
  double tail_tol = 1e-12;  // |phi| below this beyond the cutoff
  double t_max = 1e4;
  QuadratureConfig quad{1e-11, 1e-10, 2'000'000};
  std::vector<Atom> atoms;  // point masses of the law, removed before inversion
};

/// Gil-Pelaez inversion with the cutoff chosen once per characteristic function.
class CdfInverter {
 public:
  CdfInverter(CharFn cf, InversionConfig cfg = {});
  double operator()(double x) const;
  double cutoff() const { return T_; }
  /// (1/pi) int_T^{t_max} |phi|/t, assuming |phi| nonincreasing beyond T.
  double truncation_bound() const { return trunc_; }

 private:
  CharFn cf_;
  InversionConfig cfg_;
  double atom_total_ = 0.0;
  double T_ = 0.0, trunc_ = 0.0;
  std::complex<double> continuous(double t) const;
};

/// Single evaluation; SlowDecay when |phi| does not drop below tail_tol by t_max.
double invert_cdf(const CharFn& cf, double x, const InversionConfig& cfg = {});

struct DistanceResult {
  double value = 0.0;
  double x_at = 0.0;
  double grid_error = 0.0;  // growth of the sup during the last refinement round
};

/// sup_x |F_a - F_b| over the grid, refined around the maximiser.
DistanceResult kolmogorov_distance_cdf(const CdfFn& a, const CdfFn& b, const std::vector<double>& grid);
/// Both CDFs by Gil-Pelaez inversion.
DistanceResult kolmogorov_distance(const CharFn& a, const CharFn& b, const std::vector<double>& grid,
                                   const InversionConfig& cfg = {});

/// F_a - F_b = -(1/pi) int_0^T Im(e^{-itx}(phi_a - phi_b)(t))/t dt on a fixed Gauss-Legendre t-grid;
/// each charfn is evaluated once per node.
struct FourierDiffConfig {
  double T = 40.0;
  double panel = 0.25;
  int order = 16;
};
class FourierDifference {
 public:
  FourierDifference(const CharFn& a, const CharFn& b, const FourierDiffConfig& cfg = {});
  double operator()(double x) const;  // F_a(x) - F_b(x)
  /// |phi_a - phi_b|(T) / (pi T), a size indicator of the discarded tail.
  double tail_indicator() const { return tail_; }

 private:
  std::vector<double> t_, w_;
  std::vector<std::complex<double>> d_;
  double tail_ = 0.0;
};
DistanceResult kolmogorov_distance_fourier(const CharFn& a, const CharFn& b, const std::vector<double>& grid,
                                           const FourierDiffConfig& cfg = {});

struct W1Config {
  double center = 0.0;
  double scale = 1.0;  // [center - scale, center + scale] integrated directly, tails by doubling panels
  std::vector<double> breaks;
  QuadratureConfig quad{1e-11, 1e-9, 4'000'000};
};

/// int |F_a - F_b| dx. TailDivergence when the tail panels do not settle.
double w1_distance(const CdfFn& a, const CdfFn& b, const W1Config& cfg = {});

/// Two-sided KS statistic of a sample against F, bracketed by evaluating F at every stride-th
/// order statistic (F monotone).
struct KsBracket {
  double lower = 0.0, upper = 0.0;
};
KsBracket ks_statistic(std::vector<double> sample, const CdfFn& F, std::size_t stride = 1);

/// L(t) = |phi(t)| int_0^|t| ds / |phi(s)|, from log|phi|.
double dawson_functional_log(const std::function<double(double)>& log_modulus, double t,
                             const QuadratureConfig& cfg = {});
/// From the charfn itself; NearZeroModulus when |phi| underflows on [0, |t|].
double dawson_functional(const CharFn& cf, double t, const QuadratureConfig& cfg = {});
/// Uses Re of the law's exponent, so no underflow.
double dawson_functional(const IDLaw& law, double t, const QuadratureConfig& cfg = {});

/// C' with L(t) <= C'|t|/(1+|t|^alpha) for exp(-|t|^alpha): grid maximum plus golden refinement,
/// then validated on a finer grid.
struct DawsonFit {
  double C = 0.0;
  double t_at = 0.0;
  double overshoot = 0.0;  // max relative excess on the validation grid
  std::size_t coarse_points = 0, fine_points = 0;
};
DawsonFit fit_stable_dawson(double alpha, double t_max = 50.0, std::size_t coarse = 400, std::size_t fine = 5000);

inline constexpr double kEsseenC1 = 0.31830988618379067;  // 1/pi
inline constexpr double kEsseenC2 = 7.6394372684109765;   // 24/pi

/// C1 int_{-T}^{T} eps(t)/|t| dt + C2 density_sup / T.
BoundReport esseen_bound(const std::function<double(double)>& eps, double T, double density_sup,
                         const QuadratureConfig& cfg = {});
/// Golden-section search over log T in [T_lo, T_hi].
struct EsseenOptimum {
  double T = 0.0;
  BoundReport report;
};
EsseenOptimum esseen_optimal(const std::function<double(double)>& eps, double density_sup, double T_lo = 1e-3,
                             double T_hi = 1e6, const QuadratureConfig& cfg = {});

/// d_W1 <= min_{0<e<=C_m} 2 m1 e + (C_m/e) d_W2 (mollifier construction) and d_K <= sqrt(2 sup w1).
struct Transfers {
  double dw1_from_dw2 = 0.0;
  double dk_from_w1 = 0.0;
  double eps = 0.0;       // minimising smoothing width
  double C = 0.0;         // dw1_from_dw2 <= C sqrt(dw2) for dw2 < 1
};
Transfers smoothing_transfers(double dw2, double density_sup, double w1);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace levystein
