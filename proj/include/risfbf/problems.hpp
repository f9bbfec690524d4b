#pragma once

#include "risfbf/core.hpp"
#include "risfbf/oracle.hpp"
#include "risfbf/problem.hpp"
#include "risfbf/random.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace risfbf {

// ---- two-stage Cournot game with smoothed recourse ----

struct CournotParams {
  int firms = 10;
  double slope = 0.1;      // r
  double intercept = 1.0;  // d
  double box_lower = 0.0;
  double box_upper = 10.0;
};

struct CournotInstance {
  int n = 0;
  double r = 0.0;
  double d = 0.0;
  Point a;
  Point b_hat;
  double eps = 0.0;
  BoxSet box;
  double L_V = 0.0, L_R = 0.0, L_D = 0.0, L_C = 0.0;
  // min_i b_hat_i + r; reported as the strong monotonicity modulus.
  double mu = 0.0;
};

CournotInstance cournot_build(double lv_target, std::uint64_t seed, const CournotParams& params = {});
// h holds the realized recourse costs h_i(xi) <= 0.
Point cournot_oracle_sample(const CournotInstance& inst, const Point& x, const Point& h);
Point cournot_mean(const CournotInstance& inst, const Point& x);
// E[min(c, h)] for h ~ Uniform[-5, 0].
double expected_min_uniform(double c);
ProblemInstance cournot_problem(const CournotInstance& inst);

// ---- overlapping group lasso saddle point ----

struct CapParams {
  int groups = 10;
  int group_size = 10;
  int overlap = 2;
  double eta = 1e-4;
  double noise_std = 0.1;
  std::optional<double> radius;  // default 10 * ||w_true||
  std::vector<int> support_groups = {4, 5};  // 1-based
};

struct CapInstance {
  Index d = 0;
  std::vector<std::vector<Index>> groups;  // 0-based indices
  double eta = 0.0;
  Point w_true;
  double noise_std = 0.0;
  double radius = 0.0;

  Index dual_dim() const;
  Index dim() const { return d + dual_dim(); }
};

CapInstance cap_build(std::uint64_t seed, const CapParams& params = {});
Point cap_apply_L(const CapInstance& inst, const Point& w);
Point cap_apply_L_adjoint(const CapInstance& inst, const Point& v);
// z = (w, v); one design row a with label b.
Point cap_oracle_sample(const CapInstance& inst, const Point& z, const Point& a, double b);
Point cap_mean(const CapInstance& inst, const Point& z);
double cap_lipschitz(const CapInstance& inst);
ProblemInstance cap_problem(const CapInstance& inst);

// ---- synthetic affine VI with computed reference solution ----

struct SyntheticAffineInstance {
  AffineOperator op;
  BoxSet box;
  double mu = 0.0;
  double norm_M = 0.0;
  Point solution;
};

// M = mu I + S with S skew and ||S|| = skew. c ~ N(0, I) unless given.
SyntheticAffineInstance synthetic_build(Index d, double mu, double skew, const BoxSet& box,
                                        std::uint64_t seed, std::optional<Point> c = std::nullopt);
ProblemInstance synthetic_problem(const SyntheticAffineInstance& inst, const NoiseModel& noise,
                                  std::optional<Point> initial = std::nullopt);

}  // namespace risfbf
