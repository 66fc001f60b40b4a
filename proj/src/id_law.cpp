#include "levystein/id_law.hpp"

#include <atomic>
#include <thread>

namespace levystein {

std::complex<double> IDLaw::charfn(double t, const QuadratureConfig& cfg) const {
  if (t == 0.0) return 1.0;
  if (charfn_closed) return charfn_closed(t);
  if (exponent) return std::exp(exponent(t));
  return charfn_from_triplet(require_triplet(), t, cfg);
}

std::complex<double> IDLaw::log_charfn(double t, const QuadratureConfig& cfg) const {
  if (exponent) return exponent(t);
  if (triplet) return exponent_from_triplet(*triplet, t, cfg);
  throw Error(ErrorKind::Unavailable, name + ": no Lévy exponent available");
}

const LevyTriplet& IDLaw::require_triplet() const {
  if (!triplet) throw Error(ErrorKind::Unavailable, name + ": generating triplet not available");
  return *triplet;
}

const std::function<double(double)>& IDLaw::k_function() const {
  if (!triplet || !triplet->nu.k_function)
    throw Error(ErrorKind::MissingKFunction, name + ": no k-function");
  return triplet->nu.k_function;
}

IDLaw law_from_triplet(const std::string& name, LevyTriplet tr, bool self_decomposable) {
  IDLaw law;
  law.name = name;
  law.triplet = std::move(tr);
  law.self_decomposable = self_decomposable;
  const LevyTriplet& t = *law.triplet;
  double tail = t.nu.abs_moment_tail();
  law.mean_finite = std::isfinite(tail);
  law.mean = law.mean_finite ? t.b + t.nu.first_moment_tail() : kInf;
  double m2 = t.nu.second_moment();
  law.variance = std::isfinite(m2) ? m2 + t.sigma2 : kInf;
  auto copy = *law.triplet;
  law.exponent = [copy](double s) { return exponent_from_triplet(copy, s); };
  return law;
}

double mean_of(const IDLaw& law) {
  if (!law.mean_finite) throw Error(ErrorKind::InfiniteMean, law.name + ": large-jump first moment diverges");
  return law.mean;
}

StableConstants stable_constants(double alpha, double c1, double c2) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw Error(ErrorKind::DomainError, "stable index must lie in (1,2)");
  if (c1 < 0 || c2 < 0 || !(c1 + c2 > 0)) throw Error(ErrorKind::DomainError, "need c1, c2 >= 0 with c1 + c2 > 0");
  StableConstants k;
  const double g = std::tgamma(2.0 - alpha) / (alpha - 1.0);
  k.c1_alpha = c1 * g;
  k.c2_alpha = c2 * g;
  k.C_alpha = c1 == c2 ? k.c1_alpha : std::nan("");
  k.d_alpha = std::tgamma(1.0 + alpha) * std::sin(M_PI * alpha) / (2.0 * M_PI * std::cos(alpha * M_PI / 2));
  k.sigma_alpha = -(c1 + c2) * std::tgamma(-alpha) * std::cos(M_PI * alpha / 2);
  k.skew = (c1 - c2) / (c1 + c2);
  k.center = (c1 - c2) / (alpha - 1.0);
  return k;
}

double sas_unit_c(double alpha) { return -1.0 / (2.0 * std::tgamma(-alpha) * std::cos(M_PI * alpha / 2)); }

double draw_stable(RandomStream& rng, double alpha, double sigma, double beta, double mu) {
  const double v = M_PI * (rng.uniform() - 0.5);
  const double w = -std::log(rng.uniform());
  const double zeta = beta * std::tan(M_PI * alpha / 2);
  const double b = std::atan(zeta) / alpha;
  const double s = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));
  const double x = s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
  return sigma * x + mu;
}

void for_blocks(std::size_t n, std::size_t block,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t nblocks = (n + block - 1) / block;
  const unsigned nt = std::min<std::size_t>(thread_count(), std::max<std::size_t>(nblocks, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < nblocks;) body(k, k * block, std::min(n, (k + 1) * block));
  };
  if (nt <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

Sample sample(const IDLaw& law, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::DomainError, "sample size must be positive");
  if (!law.draw) throw Error(ErrorKind::Unavailable, law.name + ": no sampler");
  Sample s;
  s.seed = seed;
  s.law_name = law.name;
  s.values.resize(n);
  for_blocks(n, kSampleBlock, [&](std::size_t k, std::size_t b, std::size_t e) {
    RandomStream rng(seed, k);
    for (std::size_t i = b; i < e; ++i) s.values[i] = law.draw(rng);
  });
  return s;
}

}  // namespace levystein
