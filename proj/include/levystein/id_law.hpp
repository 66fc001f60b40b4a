#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "levystein/levy_measure.hpp"
#include "levystein/random.hpp"

namespace levystein {

/// Infinitely divisible law: triplet plus whatever closed forms are known.
struct IDLaw {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::optional<LevyTriplet> triplet;  // absent when the Lévy measure has no usable form
  std::function<std::complex<double>(double)> exponent;  // distinguished log of the charfn
  std::function<std::complex<double>(double)> charfn_closed;
  std::function<double(RandomStream&)> draw;
  std::function<double(double)> density;
  std::function<double(double)> cdf;
  bool lattice = false;              // integer-valued
  std::function<double(long)> pmf;   // lattice laws
  std::vector<Atom> point_masses;    // atoms of the law itself (not of nu), e.g. CP at 0
  double mean = 0.0;
  bool mean_finite = true;
  double variance = kInf;
  double beta_star = kInf;
  bool self_decomposable = false;
  double density_sup = std::nan("");

  std::complex<double> charfn(double t, const QuadratureConfig& cfg = {}) const;
  std::complex<double> log_charfn(double t, const QuadratureConfig& cfg = {}) const;
  const LevyTriplet& require_triplet() const;
  /// psi of nu(du) = psi(u)/|u| du; throws MissingKFunction.
  const std::function<double(double)>& k_function() const;
};

/// Catalog lookup: poisson, cp, nbin0, nbin, gamma, laplace, texp, sas, stable, chaos2, dickman,
/// idpareto, normal. Unknown names or bad parameters raise ConfigInvalid / DomainError.
IDLaw make_law(const std::string& name, const nlohmann::json& params = nlohmann::json::object());
std::vector<std::string> catalog_names();

/// Law assembled from a triplet alone (charfn by quadrature, no sampler).
IDLaw law_from_triplet(const std::string& name, LevyTriplet tr, bool self_decomposable = false);

double mean_of(const IDLaw& law);

struct StableConstants {
  double C_alpha;   // c Gamma(2-alpha)/(alpha-1) for the symmetric case (c = c1)
  double c1_alpha;
  double c2_alpha;
  double d_alpha;   // fractional Laplacian normalisation
  double sigma_alpha;  // sigma^alpha in exp(-sigma^alpha |t|^alpha (1 - i beta sgn t tan))
  double skew;         // beta
  double center;       // (c1 - c2)/(alpha - 1)
};
StableConstants stable_constants(double alpha, double c1, double c2);
/// c with c1 = c2 = c giving charfn exp(-|t|^alpha).
double sas_unit_c(double alpha);

/// Chambers-Mallows-Stuck draw from exp(-sigma^alpha|t|^alpha(1 - i beta sgn t tan(pi alpha/2)) + i mu t).
double draw_stable(RandomStream& rng, double alpha, double sigma, double beta, double mu);

struct Sample {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string law_name;
};

inline constexpr std::size_t kSampleBlock = 1 << 16;

/// Deterministic in (law, n, seed): block k of size kSampleBlock uses stream k.
Sample sample(const IDLaw& law, std::size_t n, std::uint64_t seed);

/// Runs body(block_index, begin, end) over fixed blocks, on up to thread_count() threads.
void for_blocks(std::size_t n, std::size_t block, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace levystein
