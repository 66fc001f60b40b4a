#include <cmath>
#include <numbers>

#include "levystein/approx_bounds.hpp"

namespace levystein {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool is_stable(const IDLaw& law) { return law.name == "stable" || law.name == "sas"; }

bool is_symmetric_stable(const IDLaw& law) {
  if (law.name == "sas") return true;
  return law.name == "stable" && law.params.value("c1", 0.0) == law.params.value("c2", -1.0);
}

// e^z - 1 without cancellation for small |z|
cd expm1c(cd z) {
  const double x = z.real(), y = z.imag(), sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

}  // namespace

cd unwrap_log(const CharFn& phi, double t, double step, double min_step) {
  if (t == 0.0) return 0.0;
  const double dir = t > 0 ? 1.0 : -1.0, end = std::abs(t);
  double s = 0.0, h = step, arg = 0.0;
  cd prev = 1.0;
  while (s < end) {
    double next = std::min(end, s + h);
    cd v = phi(dir * next);
    if (!(std::abs(v) > 1e-300)) throw Error(ErrorKind::NearZeroModulus, "unwrap_log: |phi| vanishes");
    double inc = std::arg(v / prev);
    if (std::abs(inc) >= kPi / 2) {
      h *= 0.5;
      if (h < min_step)
        throw Error(ErrorKind::PhaseUnwrapFailure, "unwrap_log: phase moves too fast near t = " +
                                                       std::to_string(dir * s));
      continue;
    }
    arg += inc;
    prev = v;
    s = next;
    h = std::min(step, 2.0 * h);
  }
  return cd(std::log(std::abs(prev)), arg);
}

cd cpa_charfn(const IDLaw& base, double n, double t, bool force_unwrap) {
  if (!(n >= 1.0)) throw Error(ErrorKind::DomainError, "cpa_charfn: n must be >= 1");
  if (t == 0.0) return 1.0;
  cd psi = force_unwrap ? unwrap_log([&](double s) { return base.charfn(s); }, t) : base.log_charfn(t);
  return std::exp(n * expm1c(psi / n));
}

double cpa_exponent(CpaVariant variant, double p, double alpha) {
  switch (variant) {
    case CpaVariant::L1: return 1.0 / (p + 2.0);
    case CpaVariant::L2: return 1.0 / (p + 4.0);
    case CpaVariant::Stable: return 1.0 / (alpha + 1.0);
    case CpaVariant::SaS: return 1.0 / alpha;
  }
  return std::nan("");
}

BoundReport cpa_bounds(const IDLaw& base, double n, CpaVariant variant, const DawsonExponent& d) {
  if (!(n >= 1.0)) throw Error(ErrorKind::DomainError, "cpa_bounds: n must be >= 1");
  BoundReport r;
  r.name = "cpa_bound";
  double alpha = std::nan(""), factor = 1.0, e = 0.0;
  std::string label;
  switch (variant) {
    case CpaVariant::L1: {
      const LevyTriplet& tr = base.require_triplet();
      if (tr.sigma2 != 0.0) throw Error(ErrorKind::AssumptionViolated, "cpa L1: Gaussian part present");
      if (!std::isfinite(tr.nu.abs_moment_small()))
        throw Error(ErrorKind::AssumptionViolated, "cpa L1: int_{|u|<=1} |u| nu(du) diverges");
      mean_of(base);
      double b0 = convert_representation(tr, Representation::Drift);
      double m = tr.nu.abs_moment_small() + tr.nu.abs_moment_tail();
      e = cpa_exponent(variant, d.p, alpha);
      factor = std::pow(std::abs(b0) + m, 2.0 * e);
      r.params["b0"] = b0;
      r.params["abs_moment"] = m;
      label = "L1";
      break;
    }
    case CpaVariant::L2: {
      const LevyTriplet& tr = base.require_triplet();
      if (tr.sigma2 != 0.0) throw Error(ErrorKind::AssumptionViolated, "cpa L2: Gaussian part present");
      double m2 = tr.nu.second_moment();
      if (!std::isfinite(m2)) throw Error(ErrorKind::AssumptionViolated, "cpa L2: infinite second moment");
      e = cpa_exponent(variant, d.p, alpha);
      factor = std::pow(std::abs(mean_of(base)) + m2, 2.0 * e);
      r.params["second_moment"] = m2;
      label = "L2";
      break;
    }
    case CpaVariant::Stable:
    case CpaVariant::SaS: {
      if (!is_stable(base)) throw Error(ErrorKind::AssumptionViolated, "cpa: base law is not stable");
      if (variant == CpaVariant::SaS && !is_symmetric_stable(base))
        throw Error(ErrorKind::AssumptionViolated, "cpa: base law is not symmetric");
      alpha = base.params.at("alpha").get<double>();
      e = cpa_exponent(variant, d.p, alpha);
      label = variant == CpaVariant::SaS ? "sas" : "stable";
      break;
    }
  }
  r.add("structural", std::pow(n, -e) * factor);
  r.params["n"] = n;
  r.params["exponent"] = e;
  r.params["variant"] = label;
  r.params["law"] = base.name;
  r.notes.push_back("absolute constant not recorded; multiply by C' fitted from measured distances");
  return r;
}

RateTable cpa_rate_experiment(const IDLaw& base, const std::vector<double>& n_grid,
                              const std::vector<double>& x_grid, const FourierDiffConfig& fd) {
  if (n_grid.empty()) throw Error(ErrorKind::ConfigInvalid, "cpa_rate_experiment: empty n grid");
  RateTable tab;
  tab.predicted = is_symmetric_stable(base) ? -1.0 / base.params.at("alpha").get<double>() : std::nan("");
  CharFn target = [&](double t) { return base.charfn(t); };
  for (double n : n_grid) {
    CharFn phin = [&](double t) { return cpa_charfn(base, n, t); };
    DistanceResult d = kolmogorov_distance_fourier(phin, target, x_grid, fd);
    tab.rows.push_back({n, d.value, d.grid_error});
  }
  std::vector<double> xs, ys;
  for (auto& row : tab.rows) {
    xs.push_back(row.n);
    ys.push_back(row.dK);
  }
  tab.slope = tab.rows.size() > 1 ? loglog_slope(xs, ys) : std::nan("");
  return tab;
}

}  // namespace levystein
