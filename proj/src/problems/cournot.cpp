#include "risfbf/errors.hpp"
#include "risfbf/problems.hpp"

#include <cmath>

namespace risfbf {

namespace {
constexpr double kRecourseLow = -5.0;  // h_i ~ Uniform[-5, 0]
}

CournotInstance cournot_build(double lv_target, std::uint64_t seed, const CournotParams& params) {
  if (params.firms < 1) throw ArgumentError("cournot_build: need at least one firm");
  if (!(lv_target > 0.0)) throw ArgumentError("cournot_build: L_V must be positive");
  CournotInstance inst;
  inst.n = params.firms;
  inst.r = params.slope;
  inst.d = params.intercept;
  inst.L_V = lv_target;
  inst.L_R = inst.r * (inst.n + 1);
  inst.L_D = lv_target / 10.0;
  inst.eps = 10.0 / lv_target;
  inst.L_C = lv_target - inst.L_R - inst.L_D;
  if (!(inst.L_C > 0.0)) {
    throw ArgumentError("cournot_build: L_V target too small (L_C = " + std::to_string(inst.L_C) + ")");
  }
  inst.box = BoxSet::uniform(inst.n, params.box_lower, params.box_upper);

  RandomStream rng(seed, 1);
  inst.b_hat.resize(inst.n);
  inst.b_hat[0] = inst.L_C;
  for (int i = 1; i < inst.n; ++i) inst.b_hat[i] = rng.uniform(0.0, inst.L_C);
  inst.a.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) inst.a[i] = rng.uniform(2.0, 3.0);
  inst.mu = inst.b_hat.minCoeff() + inst.r;
  return inst;
}

namespace {
Point deterministic_part(const CournotInstance& inst, const Point& x) {
  require_same_dim(x.size(), inst.n, "cournot");
  const double total = x.sum();
  Point v = inst.b_hat.cwiseProduct(x) + inst.a;
  v.array() += inst.r * (total + x.array()) - inst.d;
  return v;
}
}  // namespace

Point cournot_oracle_sample(const CournotInstance& inst, const Point& x, const Point& h) {
  Point v = deterministic_part(inst, x);
  require_same_dim(h.size(), inst.n, "cournot_oracle_sample h");
  for (int i = 0; i < inst.n; ++i) v[i] += std::min(x[i] / inst.eps, h[i]);
  return v;
}

double expected_min_uniform(double c) {
  if (c <= kRecourseLow) return c;
  if (c < 0.0) return -(c * c + 25.0) / 10.0;
  return -2.5;
}

Point cournot_mean(const CournotInstance& inst, const Point& x) {
  Point v = deterministic_part(inst, x);
  for (int i = 0; i < inst.n; ++i) v[i] += expected_min_uniform(x[i] / inst.eps);
  return v;
}

ProblemInstance cournot_problem(const CournotInstance& inst) {
  ProblemInstance p;
  p.name = "cournot";
  p.dim = inst.n;
  p.resolvent = box_resolvent(inst.box);
  p.oracle.dim = inst.n;
  p.oracle.sample = [inst](const Point& x, RandomStream& rng) {
    Point v = deterministic_part(inst, x);
    for (int i = 0; i < inst.n; ++i) v[i] += std::min(x[i] / inst.eps, rng.uniform(kRecourseLow, 0.0));
    return v;
  };
  p.oracle.mean = [inst](const Point& x) { return cournot_mean(inst, x); };
  // Var(min(c,h)) <= Var(h) = 25/12 per coordinate.
  p.oracle.variance_bound = std::sqrt(inst.n * 25.0 / 12.0);
  p.lipschitz = inst.L_V;
  p.strong_monotonicity = inst.mu;
  p.resolvent_is_projection = true;
  const BoxSet box = inst.box;
  p.initial_point = [box](RandomStream& rng) {
    Point x(box.dim());
    for (Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(0.0, 1.0);
    return project_box(x, box);
  };
  return p;
}

}  // namespace risfbf
