#pragma once

#include "risfbf/core.hpp"
#include "risfbf/merit.hpp"
#include "risfbf/oracle.hpp"
#include "risfbf/policy.hpp"
#include "risfbf/problem.hpp"
#include "risfbf/random.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace risfbf {

enum class Method { risfbf, sfbf, seg, sa, proxpoint };

const char* method_name(Method m);
Method parse_method(const std::string& s);
// Oracle batches drawn per iteration (0 for the proximal point method).
int calls_per_iteration(Method m);

struct SolverState {
  Point x_prev;
  Point x;
  Point last_y;
  long k = 1;
  long oracle_calls = 0;
  Point avg_num;
  double avg_den = 0.0;
  RandomStream rng;

  SolverState() = default;
  SolverState(const Point& x1, RandomStream stream);
  Point averaged() const;
};

void risfbf_step(SolverState& s, const ProblemInstance& prob, double alpha, double lambda,
                 double rho, long m);
void risfbf_step_fixedpoint_form(SolverState& s, const ProblemInstance& prob, double alpha,
                                 double lambda, double rho, long m);
void sfbf_step(SolverState& s, const ProblemInstance& prob, double lambda, long m);
void seg_step(SolverState& s, const ProblemInstance& prob, double lambda, long m);
// Step length 1/sqrt(k) with k = s.k.
void sa_step(SolverState& s, const ProblemInstance& prob, long m = 1);
void proxpoint_step(SolverState& s, const ProblemInstance& prob, double alpha, double lambda,
                    double rho);

struct StopRule {
  long max_iters = 0;          // 0 = unlimited
  long max_oracle_calls = 0;   // 0 = unlimited
  double residual_tol = 0.0;   // 0 = off
};

struct GapSettings {
  std::optional<Point> anchor;   // default: initial iterate
  std::optional<double> radius;  // default: 10 * ||anchor - Y_1||
  int inner_budget = 100000;
};

struct SolverConfig {
  Method method = Method::risfbf;
  RegimePolicy policy;
  BatchSchedule batch = BatchSchedule::constant(1);
  StopRule stop;
  long record_stride = 1;
  std::optional<double> residual_lambda;
  std::optional<GapSettings> gap;
  std::optional<Point> initial_point;
  bool strict = false;
};

struct TrajectoryRecord {
  long k = 0;  // iterate X_{k+1} produced by step k
  long oracle_calls = 0;
  double residual = 0.0;
  std::optional<double> rel_error;
  std::optional<double> gap;
  std::optional<double> energy_h;
  double wall_time_s = 0.0;
  std::optional<Point> snapshot;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  bool residual_estimated = false;
};

struct IterationView {
  long k;
  const Point& x_next;
  const Point& x;
  const Point& x_prev;
  const Point& y;
  StepParameters params;
  long oracle_calls;
};

using Observer = std::function<void(const IterationView&)>;

struct RunResult {
  Trajectory trajectory;
  Point final_x;
  Point averaged_x;
  long iterations = 0;
  long oracle_calls = 0;
  bool residual_target_met = false;
  bool budget_exhausted = false;
  std::vector<std::string> warnings;
  std::optional<GapRegion> gap_region;
};

RunResult run(const ProblemInstance& prob, const SolverConfig& config, RandomStream rng,
              const Observer& observer = {});

}  // namespace risfbf
