#include "risfbf/solvers.hpp"

#include "risfbf/errors.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace risfbf {

const char* method_name(Method m) {
  switch (m) {
    case Method::risfbf: return "risfbf";
    case Method::sfbf: return "sfbf";
    case Method::seg: return "seg";
    case Method::sa: return "sa";
    case Method::proxpoint: return "proxpoint";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  for (Method m : {Method::risfbf, Method::sfbf, Method::seg, Method::sa, Method::proxpoint}) {
    if (s == method_name(m)) return m;
  }
  throw ArgumentError("unknown method '" + s + "'");
}

int calls_per_iteration(Method m) {
  switch (m) {
    case Method::sa: return 1;
    case Method::proxpoint: return 0;
    default: return 2;
  }
}

SolverState::SolverState(const Point& x1, RandomStream stream)
    : x_prev(x1), x(x1), last_y(x1), avg_num(Point::Zero(x1.size())), rng(std::move(stream)) {}

Point SolverState::averaged() const {
  if (!(avg_den > 0.0)) return x;
  return avg_num / avg_den;
}

namespace {

Point draw(const ProblemInstance& prob, const Point& at, long m, SolverState& s) {
  try {
    return minibatch_estimate(prob.oracle, at, m, s.rng).estimate;
  } catch (const NumericFailure& f) {
    throw NumericFailure("iteration " + std::to_string(s.k) + ": " + f.what(), s.k);
  }
}

void check_step_args(double lambda, long m) {
  if (!(lambda > 0.0)) throw ArgumentError("step: λ must be positive");
  if (m < 1) throw ArgumentError("step: batch size must be >= 1");
}

void finish(SolverState& s, Point next, Point y, double weight) {
  s.avg_num += weight * y;
  s.avg_den += weight;
  s.last_y = std::move(y);
  s.x_prev = std::move(s.x);
  s.x = std::move(next);
  ++s.k;
}

void check_inertial_args(double alpha, double lambda, double rho, long m) {
  check_step_args(lambda, m);
  if (!(rho > 0.0)) throw ArgumentError("step: ρ must be positive");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ArgumentError("step: α must lie in [0,1)");
}

}  // namespace

void risfbf_step(SolverState& s, const ProblemInstance& prob, double alpha, double lambda,
                 double rho, long m) {
  check_inertial_args(alpha, lambda, rho, m);
  Point z = s.x + alpha * (s.x - s.x_prev);
  Point a = draw(prob, z, m, s);
  Point y = prob.resolvent(z - lambda * a, lambda);
  Point b = draw(prob, y, m, s);
  Point next = (1.0 - rho) * z + rho * (y + lambda * (a - b));
  s.oracle_calls += 2 * m;
  finish(s, std::move(next), std::move(y), rho);
}

void risfbf_step_fixedpoint_form(SolverState& s, const ProblemInstance& prob, double alpha,
                                 double lambda, double rho, long m) {
  check_inertial_args(alpha, lambda, rho, m);
  Point z = s.x + alpha * (s.x - s.x_prev);
  // Phi(z) = (Id - lambda A)z - (Id - lambda B) J (Id - lambda A) z
  Point a = draw(prob, z, m, s);
  Point forward = z - lambda * a;
  Point y = prob.resolvent(forward, lambda);
  Point b = draw(prob, y, m, s);
  Point phi = forward - (y - lambda * b);
  Point next = z - rho * phi;
  s.oracle_calls += 2 * m;
  finish(s, std::move(next), std::move(y), rho);
}

void sfbf_step(SolverState& s, const ProblemInstance& prob, double lambda, long m) {
  check_step_args(lambda, m);
  Point a = draw(prob, s.x, m, s);
  Point y = prob.resolvent(s.x - lambda * a, lambda);
  Point b = draw(prob, y, m, s);
  Point next = y - lambda * (b - a);
  s.oracle_calls += 2 * m;
  finish(s, std::move(next), std::move(y), 1.0);
}

void seg_step(SolverState& s, const ProblemInstance& prob, double lambda, long m) {
  check_step_args(lambda, m);
  Point a = draw(prob, s.x, m, s);
  Point y = prob.resolvent(s.x - lambda * a, lambda);
  Point b = draw(prob, y, m, s);
  Point next = prob.resolvent(s.x - lambda * b, lambda);
  s.oracle_calls += 2 * m;
  finish(s, std::move(next), std::move(y), 1.0);
}

void sa_step(SolverState& s, const ProblemInstance& prob, long m) {
  if (s.k < 1) throw ArgumentError("sa_step: k must be >= 1");
  if (m < 1) throw ArgumentError("sa_step: batch size must be >= 1");
  const double step = 1.0 / std::sqrt(static_cast<double>(s.k));
  Point g = draw(prob, s.x, m, s);
  Point next = prob.resolvent(s.x - step * g, step);
  s.oracle_calls += m;
  Point y = next;
  finish(s, std::move(next), std::move(y), 1.0);
}

void proxpoint_step(SolverState& s, const ProblemInstance& prob, double alpha, double lambda,
                    double rho) {
  check_inertial_args(alpha, lambda, rho, 1);
  Point z = s.x + alpha * (s.x - s.x_prev);
  Point y = prob.resolvent(z, lambda);
  Point next = (1.0 - rho) * z + rho * y;
  finish(s, std::move(next), std::move(y), rho);
}

namespace {

bool uses_policy(Method m) { return m == Method::risfbf || m == Method::proxpoint; }

std::string join(const std::vector<std::string>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "; " : "") << v[i];
  return os.str();
}

}  // namespace

RunResult run(const ProblemInstance& prob, const SolverConfig& config, RandomStream rng,
              const Observer& observer) {
  const StopRule& stop = config.stop;
  if (stop.max_iters <= 0 && stop.max_oracle_calls <= 0) {
    throw ArgumentError("run: a max_iters or max_oracle_calls limit is required");
  }
  if (config.record_stride < 1) throw ArgumentError("run: record stride must be >= 1");
  config.batch.validate();
  const double L = prob.lipschitz;
  if (!(L > 0.0)) throw ArgumentError("run: problem Lipschitz constant must be positive");

  RunResult res;
  if (uses_policy(config.method)) {
    res.warnings = validate(config.policy, L, prob.strong_monotonicity);
  }
  const double base_lambda = uses_policy(config.method)
                                 ? default_lambda(config.policy, L, prob.strong_monotonicity)
                                 : config.policy.lambda.value_or(1.0 / (4.0 * L));
  if (!(base_lambda > 0.0)) res.warnings.push_back("λ must be positive");
  if (config.strict && !res.warnings.empty()) throw PolicyViolation(join(res.warnings));

  const double res_lambda = config.residual_lambda.value_or(base_lambda);
  const bool have_mean = prob.oracle.has_mean();
  res.trajectory.residual_estimated = !have_mean;
  RandomStream eval_rng(0x9e3779b97f4a7c15ULL, 0xe7a1ULL);

  Point x1;
  if (config.initial_point) {
    x1 = *config.initial_point;
  } else if (prob.initial_point) {
    x1 = prob.initial_point(rng);
  } else {
    x1 = Point::Zero(prob.dim);
  }
  require_same_dim(x1.size(), prob.dim, "run: initial point");

  const bool energy = config.method == Method::risfbf &&
                      config.policy.regime == Regime::strongly_monotone && prob.solution.has_value();
  const bool want_gap = config.gap.has_value();
  if (want_gap && !prob.affine) throw UnsupportedOperation("run: gap requested for a non-affine problem");
  const bool snapshots = prob.dim <= 256;

  SolverState s(x1, std::move(rng));
  const auto t0 = std::chrono::steady_clock::now();
  long iterations = 0;
  bool stopped_by_budget = false;

  auto eval_residual = [&](const Point& x) {
    return have_mean ? residual(prob, x, res_lambda) : residual_estimated(prob, x, res_lambda, eval_rng);
  };

  for (;;) {
    if (stop.max_iters > 0 && iterations >= stop.max_iters) {
      stopped_by_budget = true;
      break;
    }
    const long k = s.k;
    const long m = config.method == Method::proxpoint ? 1 : batch_size(config.batch, k);
    const long cost = static_cast<long>(calls_per_iteration(config.method)) * m;
    if (stop.max_oracle_calls > 0 && s.oracle_calls + cost > stop.max_oracle_calls) {
      stopped_by_budget = true;
      break;
    }
    StepParameters sp;
    if (uses_policy(config.method)) {
      sp = parameters_at(config.policy, k, L, prob.strong_monotonicity);
    } else {
      sp.lambda = base_lambda;
    }
    const Point x_k = s.x;
    const Point x_km1 = s.x_prev;

    switch (config.method) {
      case Method::risfbf: risfbf_step(s, prob, sp.alpha, sp.lambda, sp.rho, m); break;
      case Method::sfbf: sfbf_step(s, prob, sp.lambda, m); break;
      case Method::seg: seg_step(s, prob, sp.lambda, m); break;
      case Method::sa: sa_step(s, prob, m); break;
      case Method::proxpoint: proxpoint_step(s, prob, sp.alpha, sp.lambda, sp.rho); break;
    }
    ++iterations;
    if (!s.x.allFinite()) {
      throw NumericFailure("iteration " + std::to_string(k) + ": iterate is not finite", k);
    }

    if (want_gap && !res.gap_region) {
      GapRegion g;
      g.anchor = config.gap->anchor.value_or(x1);
      g.radius = config.gap->radius.value_or(10.0 * (g.anchor - s.last_y).norm());
      if (!(g.radius > 0.0)) g.radius = 1.0;
      g.domain_projection = prob.resolvent;
      res.gap_region = g;
    }

    const bool record = (k - 1) % config.record_stride == 0;
    double r = 0.0;
    if (record || stop.residual_tol > 0.0) r = eval_residual(s.x);
    if (record) {
      TrajectoryRecord rec;
      rec.k = k;
      rec.oracle_calls = s.oracle_calls;
      rec.residual = r;
      if (prob.truth) {
        rec.rel_error = relative_error(s.x.segment(prob.truth->offset, prob.truth->values.size()),
                                       prob.truth->values);
      }
      if (want_gap) {
        rec.gap = dual_gap_affine(*prob.affine, s.averaged(), *res.gap_region, config.gap->inner_budget);
      }
      if (energy) {
        rec.energy_h = energy_H(x_k, x_km1, *prob.solution, sp.alpha, sp.rho, sp.lambda, l_tilde(L),
                                config.policy.a);
      }
      rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (snapshots) rec.snapshot = s.x;
      res.trajectory.records.push_back(std::move(rec));
    }
    if (observer) {
      observer(IterationView{k, s.x, x_k, x_km1, s.last_y, sp, s.oracle_calls});
    }
    if (stop.residual_tol > 0.0 && r <= stop.residual_tol) {
      res.residual_target_met = true;
      break;
    }
  }
  res.budget_exhausted = stopped_by_budget;
  res.final_x = s.x;
  res.averaged_x = s.averaged();
  res.iterations = iterations;
  res.oracle_calls = s.oracle_calls;
  return res;
}

}  // namespace risfbf
