#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "levystein/approx_bounds.hpp"
#include "levystein/bias_transforms.hpp"
#include "levystein/fourier_metrics.hpp"
#include "levystein/report.hpp"
#include "levystein/semigroup_stein.hpp"
#include "levystein/stein_ops.hpp"

using namespace levystein;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Opts {
  std::string law = "gamma", params = "{}", law_inf = "gamma", params_inf = "{}";
  std::string ngrid = "16..4096", out, transform = "size", delta = "sizebias", variant, bump = "0.25,0,1";
  std::string xgrid = "-5,5,0.5";
  double n = 1e5, lambda = std::nan(""), alpha = 1.5, tmax = 50, N = 8, p = 1, C = 0;
  std::size_t nmax = 12, K = 60, samples = 100000, gwlt_n = 64;
  std::uint64_t seed = 1;
};

std::vector<double> parse_ngrid(const std::string& s) {
  std::vector<double> g;
  if (auto pos = s.find(".."); pos != std::string::npos) {
    double lo = std::stod(s.substr(0, pos)), hi = std::stod(s.substr(pos + 2));
    if (!(lo >= 1) || !(hi >= lo)) throw Error(ErrorKind::ConfigInvalid, "ngrid range must satisfy 1 <= lo <= hi");
    for (double v = lo; v <= hi * (1 + 1e-12); v *= 2) g.push_back(v);
  } else {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) g.push_back(std::stod(tok));
  }
  if (g.empty()) throw Error(ErrorKind::ConfigInvalid, "empty n grid");
  return g;
}

std::vector<double> parse_list(const std::string& s, std::size_t want, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  try {
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigInvalid, std::string(what) + ": not a number list");
  }
  if (v.size() != want) throw Error(ErrorKind::ConfigInvalid, std::string(what) + ": expected " + std::to_string(want) + " values");
  return v;
}

json parse_params(const std::string& s) {
  json j = json::parse(s, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::ConfigInvalid, "params must be a JSON object");
  return j;
}

IDLaw law_from(const std::string& name, const std::string& params, double lambda) {
  json p = parse_params(params);
  if (!std::isnan(lambda)) p["lambda"] = lambda;
  return make_law(name, p);
}

// CSV to --out (or stdout) plus a JSON sidecar next to it.
class Emitter {
 public:
  Emitter(const std::string& cmd, const Opts& o, json config) : path_(o.out) {
    config["command"] = cmd;
    config_ = std::move(config);
  }
  std::ostream& os() { return buf_; }
  void note(const std::string& k, json v) { extra_[k] = std::move(v); }
  void finish() {
    const std::string body = buf_.str();
    if (path_.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream(path_) << body;
    json side = {{"config", config_},
                 {"config_hash", std::to_string(fnv1a(config_.dump()))},
                 {"version", kVersion},
                 {"results", extra_}};
    std::ofstream(path_ + ".json") << side.dump(2) << '\n';
  }

 private:
  std::string path_;
  json config_, extra_ = json::object();
  std::ostringstream buf_;
};

void emit_report(Emitter& e, const BoundReport& r) {
  CsvWriter(e.os(), {"term", "value"});
  for (const auto& [k, v] : r.terms) e.os() << k << ',' << fmt17(v) << '\n';
  e.os() << "total," << fmt17(r.total()) << '\n';
  for (const auto& [k, v] : r.derived) e.os() << k << ',' << fmt17(v) << '\n';
  e.note("report", r.to_json());
}

void emit_rates(Emitter& e, const RateTable& t) {
  CsvWriter w(e.os(), {"n", "dK", "grid_error"});
  for (const auto& r : t.rows) w.row({r.n, r.dK, r.grid_error});
  e.os() << "# slope," << fmt17(t.slope) << ",predicted," << fmt17(t.predicted) << '\n';
  e.note("slope", t.slope);
  e.note("predicted", t.predicted);
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  CLI::App app{"Stein-method tools for infinitely divisible laws", "levystein_cli"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file whose keys are option names (without dashes)");

  auto law_opts = [&](CLI::App* s) {
    s->add_option("--law", o.law, "catalog law name");
    s->add_option("--params", o.params, "law parameters as a JSON object");
    s->add_option("--lambda", o.lambda, "shortcut for params.lambda");
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--seed", o.seed);
    s->add_option("--out", o.out, "CSV path; a .json sidecar is written next to it");
  };

  auto* catalog = app.add_subcommand("catalog", "list catalog laws");
  common(catalog);
  auto* ident = app.add_subcommand("identity-check", "MC residuals of E A_gen f(X) over the Lipschitz dictionary");
  law_opts(ident);
  common(ident);
  ident->add_option("--n", o.n, "samples")->check(CLI::Range(2.0, 1e12));
  auto* bias = app.add_subcommand("bias-check", "MC residuals of the bias-transform identities");
  law_opts(bias);
  common(bias);
  bias->add_option("--n", o.n)->check(CLI::Range(2.0, 1e12));
  bias->add_option("--transform", o.transform)->check(CLI::IsMember({"size", "zero", "mixed"}));
  auto* daw = app.add_subcommand("dawson", "generalized Dawson functional on [0, tmax]");
  law_opts(daw);
  common(daw);
  daw->add_option("--tmax", o.tmax);
  auto* rates = app.add_subcommand("rates", "Delta_n between two laws");
  law_opts(rates);
  common(rates);
  rates->add_option("--law-inf", o.law_inf);
  rates->add_option("--params-inf", o.params_inf);
  rates->add_option("--delta", o.delta)->check(CLI::IsMember({"sizebias", "zerobias", "selfdecomp"}));
  rates->add_option("--p", o.p, "Dawson exponent");
  rates->add_option("--C", o.C, "Dawson constant of the Kolmogorov bound (0: none)");
  auto* cpa = app.add_subcommand("cpa", "compound Poisson approximation rates");
  law_opts(cpa);
  common(cpa);
  cpa->add_option("--ngrid", o.ngrid, "lo..hi (doubling) or a comma list");
  cpa->add_option("--variant", o.variant)->check(CLI::IsMember({"l1", "l2", "stable", "sas"}));
  auto* par = app.add_subcommand("pareto-stable", "Pareto sums against the symmetric stable law");
  common(par);
  par->add_option("--alpha", o.alpha);
  par->add_option("--ngrid", o.ngrid);
  auto* chaos = app.add_subcommand("chaos-rates", "second-chaos Delta_n for geometric eigenvalues");
  common(chaos);
  chaos->add_option("--nmax", o.nmax);
  chaos->add_option("--K", o.K);
  auto* sg = app.add_subcommand("semigroup", "Stein solution for a Gaussian-bump test function");
  law_opts(sg);
  common(sg);
  sg->add_option("--bump", o.bump, "a,m,s");
  sg->add_option("--xgrid", o.xgrid, "lo,hi,step");
  auto* gw = app.add_subcommand("gwlt", "six-term bound for iid Exp(1) sums against gamma(1,1)");
  common(gw);
  gw->add_option("--n", o.gwlt_n);
  gw->add_option("--N", o.N);
  gw->add_option("--samples", o.samples);

  // --config: JSON keys become options of the chosen subcommand, placed before the command-line ones
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    std::ifstream in(args[i + 1]);
    json cfg = in.is_open() ? json::parse(in, nullptr, false) : json();
    if (cfg.is_discarded() || !cfg.is_object()) {
      std::cerr << "ConfigInvalid: cannot read config " << args[i + 1] << '\n';
      return 2;
    }
    std::vector<std::string> extra;
    for (auto& [k, v] : cfg.items()) {
      extra.push_back("--" + k);
      extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.rfind("--", 0) != 0; });
    if (sub != args.end()) args.insert(sub + 1, extra.begin(), extra.end());
    break;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  json config = json::object();
  for (const CLI::Option* opt : cmd->get_options())
    if (opt->count() > 0 && opt->get_name() != "--help") config[opt->get_name()] = opt->as<std::string>();
  Emitter e(cmd->get_name(), o, config);

  try {
    const std::string name = cmd->get_name();
    if (name == "catalog") {
      CsvWriter(e.os(), {"name", "mean", "variance", "beta_star", "self_decomposable"});
      for (const auto& nm : catalog_names()) {
        // chaos2 has no default eigenvalues
        IDLaw l = nm == "chaos2" ? make_law(nm, {{"lambdas", {0.5}}}) : make_law(nm);
        e.os() << nm << ',' << (l.mean_finite ? fmt17(l.mean) : "inf") << ',' << fmt17(l.variance) << ','
               << fmt17(l.beta_star) << ',' << (l.self_decomposable ? 1 : 0) << '\n';
      }
    } else if (name == "identity-check") {
      IDLaw law = law_from(o.law, o.params, o.lambda);
      const auto& dict = blip_dictionary();
      auto est = identity_residuals(law, dict, static_cast<std::size_t>(o.n), o.seed);
      CsvWriter(e.os(), {"function", "estimate", "stderr", "passes"});
      std::size_t fails = 0;
      for (std::size_t i = 0; i < dict.size(); ++i) {
        e.os() << dict[i].name << ',' << fmt17(est[i].estimate) << ',' << fmt17(est[i].stderr_) << ','
               << (est[i].passes() ? 1 : 0) << '\n';
        fails += !est[i].passes();
      }
      e.note("failures", fails);
    } else if (name == "bias-check") {
      IDLaw law = law_from(o.law, o.params, o.lambda);
      const auto& dict = c2_dictionary();
      CsvWriter(e.os(), {"function", "estimate", "stderr", "passes"});
      std::function<Estimate(const TestFunction&, std::uint64_t)> run;
      if (o.transform == "size") {
        auto sb = std::make_shared<SizeBiasPair>(size_bias_pair(law));
        run = [&, sb](const TestFunction& f, std::uint64_t s) { return size_bias_residual(law, *sb, f, o.n, s); };
      } else if (o.transform == "zero") {
        auto zb = std::make_shared<ZeroBias>(zero_bias(law));
        run = [&, zb](const TestFunction& f, std::uint64_t s) { return zero_bias_residual(law, *zb, f, o.n, s); };
      } else {
        auto mt = std::make_shared<MixedTransform>(mixed_transform(law));
        run = [&, mt](const TestFunction& f, std::uint64_t s) { return mixed_residual(law, *mt, f, o.n, s); };
      }
      for (std::size_t i = 0; i < dict.size(); ++i) {
        Estimate est = run(dict[i], o.seed + i);
        e.os() << dict[i].name << ',' << fmt17(est.estimate) << ',' << fmt17(est.stderr_) << ','
               << (est.passes() ? 1 : 0) << '\n';
      }
    } else if (name == "dawson") {
      IDLaw law = law_from(o.law, o.params, o.lambda);
      CsvWriter w(e.os(), {"t", "L"});
      for (double t : uniform_grid(0.0, o.tmax, 501)) w.row({t, dawson_functional(law, t)});
      if (law.name == "sas") {
        DawsonFit fit = fit_stable_dawson(law.params.at("alpha").get<double>(), o.tmax);
        e.os() << "# C," << fmt17(fit.C) << ",overshoot," << fmt17(fit.overshoot) << '\n';
        e.note("C", fit.C);
      }
    } else if (name == "rates") {
      IDLaw a = law_from(o.law, o.params, o.lambda), b = make_law(o.law_inf, parse_params(o.params_inf));
      DawsonExponent d{o.C, o.p};
      BoundReport r = o.delta == "sizebias"   ? delta_sizebias(a, b, d)
                      : o.delta == "zerobias" ? delta_zerobias(a, b, W1Route::Cdf, d)
                                              : delta_selfdecomp(a, b, d);
      emit_report(e, r);
    } else if (name == "cpa") {
      IDLaw law = law_from(o.law, o.params, o.lambda);
      auto ng = parse_ngrid(o.ngrid);
      if (o.variant.empty()) o.variant = law.name == "sas" ? "sas" : law.name == "stable" ? "stable" : "l2";
      const CpaVariant v = o.variant == "l1" ? CpaVariant::L1
                           : o.variant == "l2" ? CpaVariant::L2
                           : o.variant == "stable" ? CpaVariant::Stable
                                                   : CpaVariant::SaS;
      RateTable t = cpa_rate_experiment(law, ng, uniform_grid(-10, 10, 401));
      emit_rates(e, t);
      BoundReport r = cpa_bounds(law, ng.front(), v);
      e.os() << "# bound_exponent," << fmt17(r.params.at("exponent").get<double>()) << '\n';
      e.note("bound", r.to_json());
    } else if (name == "pareto-stable") {
      emit_rates(e, pareto_to_stable_experiment(o.alpha, parse_ngrid(o.ngrid), uniform_grid(-10, 10, 401)));
    } else if (name == "chaos-rates") {
      if (o.nmax < 1 || o.K <= o.nmax) throw Error(ErrorKind::ConfigInvalid, "need 1 <= nmax < K");
      auto lam = geometric_chaos_eigenvalues(o.K);
      CsvWriter w(e.os(), {"n", "delta", "ratio"});
      double prev = std::nan("");
      for (std::size_t n = 1; n <= o.nmax; ++n) {
        double d = chaos_delta(truncate_rescaled(lam, n), lam);
        w.row({static_cast<double>(n), d, d / prev});
        prev = d;
      }
    } else if (name == "semigroup") {
      IDLaw law = law_from(o.law, o.params, o.lambda);
      auto b = parse_list(o.bump, 3, "--bump");
      auto x = parse_list(o.xgrid, 3, "--xgrid");
      if (!(x[2] > 0) || !(x[1] >= x[0])) throw Error(ErrorKind::ConfigInvalid, "--xgrid needs lo <= hi, step > 0");
      SteinSolution sol = solve_stein(make_semigroup_target(law), gaussian_bump(b[0], b[1], b[2]));
      std::vector<double> grid;
      for (double v = x[0]; v <= x[1] + 1e-12; v += x[2]) grid.push_back(v);
      sol.export_csv(e.os(), grid);
      e.note("time_truncation", sol.time_truncation);
      e.note("tail_bound", sol.tail_bound);
      e.note("C_est", sol.C_est);
      e.note("f_prime_sup", sol.f_prime_sup());
    } else if (name == "gwlt") {
      if (o.gwlt_n < 1) throw Error(ErrorKind::ConfigInvalid, "--n must be >= 1");
      const double n = static_cast<double>(o.gwlt_n);
      IDLaw target = make_law("gamma", {{"alpha", 1.0}, {"beta", 1.0}});
      SumScheme s{{exponential_summand(1.0)}, 1.0 / std::sqrt(n), 1.0 - std::sqrt(n), o.gwlt_n};
      BoundReport r = gwlt_bound(s, target, o.N);
      emit_report(e, r);
      Dw2Lower lo = dw2_lower_estimate([&](RandomStream& g) { return s.draw_sum(g); }, target, o.samples, o.seed);
      e.os() << "dw2_lower," << fmt17(lo.estimate) << '\n';
      e.note("dw2_lower", {{"estimate", lo.estimate}, {"raw", lo.raw}, {"stderr", lo.stderr_}, {"function", lo.function}});
    }
    e.finish();
  } catch (const Error& err) {
    std::cerr << err.what() << '\n';
    return err.kind() == ErrorKind::ConfigInvalid ? 2 : 3;
  } catch (const std::exception& err) {
    std::cerr << "ConfigInvalid: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
