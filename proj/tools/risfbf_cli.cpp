// Experiment driver: run / compare / bounds / variance.

#include "risfbf/config.hpp"
#include "risfbf/errors.hpp"
#include "risfbf/experiment.hpp"
#include "risfbf/policy.hpp"
#include "risfbf/stats.hpp"
#include "risfbf/theory.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

using namespace risfbf;

namespace {

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  bool strict = false;

  RunOptions options() const {
    RunOptions o;
    o.seed = seed;
    o.replications = replications;
    o.out_dir = out_dir;
    o.workers = workers;
    o.strict = strict;
    return o;
  }
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "global seed (overrides [meta] seed)");
  sub->add_option("--replications", f.replications, "number of replications");
  sub->add_option("--out-dir", f.out_dir, "output directory for CSV files");
  sub->add_option("--workers", f.workers, "concurrent replications");
  sub->add_flag("--strict", f.strict, "treat policy violations as fatal");
}

void print_warnings(const RunReport& r) {
  for (const auto& w : r.warnings) std::cerr << "warning [" << r.label << "]: " << w << "\n";
}

int exit_for(const std::vector<RunReport>& reports) {
  for (const auto& r : reports) {
    if (r.failed == static_cast<int>(r.replications.size())) {
      for (const auto& o : r.replications) std::cerr << "replication " << o.index << ": " << o.error << "\n";
      return 2;
    }
  }
  return 0;
}

int cmd_run(const std::string& path, const Flags& f) {
  const auto cfg = load_config(path);
  const auto report = run_experiment(cfg, f.options());
  print_warnings(report);
  std::cout << format_table({report});
  return exit_for({report});
}

int cmd_compare(const std::vector<std::string>& paths, const Flags& f) {
  std::vector<ExperimentConfig> cfgs;
  for (const auto& p : paths) cfgs.push_back(load_config(p));
  const auto reports = compare(cfgs, f.options());
  for (const auto& r : reports) print_warnings(r);
  std::cout << format_table(reports);
  return exit_for(reports);
}

int cmd_bounds(const std::string& path, const Flags& f) {
  auto cfg = load_config(path);
  const auto prob = build_problem(cfg.problem);
  const auto& pol = cfg.solver.policy;
  const double L = prob.lipschitz;
  std::printf("problem            %s (d = %ld)\n", prob.name.c_str(), static_cast<long>(prob.dim));
  std::printf("L                  %.6g\n", L);
  std::printf("L~                 %.6g\n", l_tilde(L));
  if (prob.strong_monotonicity) std::printf("mu                 %.6g\n", *prob.strong_monotonicity);
  std::printf("regime             %s\n", regime_name(pol.regime));
  for (const auto& w : validate(pol, L, prob.strong_monotonicity)) std::printf("violation          %s\n", w.c_str());
  const auto sp = parameters_at(pol, 1, L, prob.strong_monotonicity);
  std::printf("alpha_1 lambda rho_1  %.6g %.6g %.6g\n", sp.alpha, sp.lambda, sp.rho);

  if (pol.regime != Regime::strongly_monotone || !prob.strong_monotonicity) {
    std::printf("linear-rate envelope requires the strongly_monotone regime and a known mu\n");
    return 0;
  }
  const double mu = *prob.strong_monotonicity;
  const double abar = pol.effective_alpha_bar();
  const double q = contraction_q(pol.a, pol.b, sp.lambda, mu, abar, l_tilde(L));
  const double s = prob.oracle.variance_bound + prob.oracle.bias_bound;
  const double B = noise_constant_B(s, pol.a, sp.lambda, l_tilde(L));
  std::printf("q                  %.8g\n", q);
  std::printf("s                  %.6g\n", s);
  std::printf("B                  %.6g\n", B);
  if (!prob.solution || !prob.initial_point) {
    std::printf("distance ||X_1 - x*|| unknown: constants C(p,q), c_{q,theta} not available\n");
    return 0;
  }
  RandomStream rng(f.seed.value_or(cfg.seed), 0);
  const double dist = (prob.initial_point(rng) - *prob.solution).squaredNorm();
  std::printf("||X_1 - x*||^2     %.6g\n", dist);
  const auto& batch = cfg.solver.batch;
  if (batch.kind == BatchSchedule::Kind::geometric) {
    const double p = batch.p;
    std::optional<double> p_hat;
    if (p == q) p_hat = default_p_hat(p);
    const double C = geometric_constant(p, q, dist, sp.alpha, abar, B, p_hat);
    std::printf("p                  %.8g\n", p);
    std::printf("C(p,q)             %.6g\n", C);
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      const long tau = tau_eps(p, q, C, eps, p_hat);
      std::printf("eps %-8.0e tau %-8ld oracle cost %ld\n", eps, tau, oracle_cost(batch, tau, 2));
    }
  } else if (batch.kind == BatchSchedule::Kind::polynomial) {
    std::printf("c_{q,theta}        %.6g  (rate c * (k+1)^-%.3g)\n",
                poly_rate_constant(q, batch.theta, dist, sp.alpha, abar, B), batch.theta);
  } else {
    std::printf("batch schedule %s has no closed-form envelope\n", batch.describe().c_str());
  }
  return 0;
}

int cmd_variance(const std::string& path, const Flags& f, int repeats) {
  auto cfg = load_config(path);
  const auto prob = build_problem(cfg.problem);
  if (!prob.oracle.has_mean()) throw UnsupportedOperation("variance sweep needs an exact mean operator");
  RandomStream rng(f.seed.value_or(cfg.seed), 0);
  const Point x = prob.initial_point ? prob.initial_point(rng) : Point::Zero(prob.dim);
  std::vector<double> lm, lv;
  std::printf("%8s %14s\n", "m", "variance");
  for (long m : {1L, 4L, 16L, 64L, 256L}) {
    const double v = empirical_variance(prob.oracle, x, m, repeats, rng);
    std::printf("%8ld %14.6e\n", m, v);
    if (v > 0.0) {
      lm.push_back(std::log(static_cast<double>(m)));
      lv.push_back(std::log(v));
    }
  }
  if (lm.size() >= 2) std::printf("log-log slope %.4f\n", ls_slope(lm, lv));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic forward-backward-forward experiments"};
  app.require_subcommand(1);
  Flags flags;
  std::string config;
  std::vector<std::string> configs;
  int repeats = 200;

  auto* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config, "config file")->required();
  add_common(run, flags);
  auto* cmp = app.add_subcommand("compare", "run several configs on one problem");
  cmp->add_option("configs", configs, "config files")->required();
  add_common(cmp, flags);
  auto* bounds = app.add_subcommand("bounds", "print theoretical rate envelopes");
  bounds->add_option("config", config, "config file")->required();
  bounds->add_option("--seed", flags.seed, "seed for the initial point");
  auto* var = app.add_subcommand("variance", "oracle variance sweep over batch sizes");
  var->add_option("config", config, "config file")->required();
  var->add_option("--seed", flags.seed, "seed for the sweep");
  var->add_option("--repeats", repeats, "batches per size")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config, flags);
    if (*cmp) return cmd_compare(configs, flags);
    if (*bounds) return cmd_bounds(config, flags);
    if (*var) return cmd_variance(config, flags, repeats);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const PolicyViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ArgumentError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
