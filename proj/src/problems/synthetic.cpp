#include "risfbf/errors.hpp"
#include "risfbf/merit.hpp"
#include "risfbf/problems.hpp"

#include <cmath>

namespace risfbf {

SyntheticAffineInstance synthetic_build(Index d, double mu, double skew, const BoxSet& box,
                                        std::uint64_t seed, std::optional<Point> c) {
  if (d < 1) throw ArgumentError("synthetic_build: d must be >= 1");
  if (!(mu >= 0.0)) throw ArgumentError("synthetic_build: μ must be >= 0");
  if (!(skew >= 0.0)) throw ArgumentError("synthetic_build: skew magnitude must be >= 0");
  require_same_dim(box.dim(), d, "synthetic_build box");

  RandomStream rng(seed, 0);
  Eigen::MatrixXd A(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) A(i, j) = rng.normal();
  Eigen::MatrixXd S = A - A.transpose();
  const double s_norm = d > 1 ? Eigen::JacobiSVD<Eigen::MatrixXd>(S).singularValues()(0) : 0.0;
  if (skew > 0.0 && s_norm > 0.0) {
    S *= skew / s_norm;
  } else {
    S.setZero();
  }

  SyntheticAffineInstance inst;
  inst.mu = mu;
  inst.box = box;
  inst.op.M = mu * Eigen::MatrixXd::Identity(d, d) + S;
  if (c) {
    require_same_dim(c->size(), d, "synthetic_build offset");
    inst.op.c = *c;
  } else {
    inst.op.c.resize(d);
    for (Index i = 0; i < d; ++i) inst.op.c[i] = rng.normal();
  }
  inst.norm_M = Eigen::JacobiSVD<Eigen::MatrixXd>(inst.op.M).singularValues()(0);

  // Reference solution by deterministic projected extragradient.
  const double lam = inst.norm_M > 0.0 ? 1.0 / (4.0 * inst.norm_M) : 1.0;
  auto res1 = [&](const Point& x) { return (x - project_box(x - inst.op.apply(x), box)).norm(); };
  Point x = project_box(Point::Zero(d), box);
  double r = res1(x);
  for (long it = 0; it < 1000000 && r > 1e-12; ++it) {
    Point y = project_box(x - lam * inst.op.apply(x), box);
    x = project_box(x - lam * inst.op.apply(y), box);
    if (it % 10 == 9) r = res1(x);
  }
  r = res1(x);
  if (!(r <= 1e-10)) {
    throw ArgumentError("synthetic_build: reference solve stalled at residual " + std::to_string(r));
  }
  inst.solution = x;
  return inst;
}

ProblemInstance synthetic_problem(const SyntheticAffineInstance& inst, const NoiseModel& noise,
                                  std::optional<Point> initial) {
  ProblemInstance p;
  p.name = "synthetic";
  p.dim = inst.op.M.rows();
  p.resolvent = box_resolvent(inst.box);
  AffineOperator op = inst.op;
  p.oracle = make_noisy_oracle([op](const Point& x) { return op.apply(x); }, p.dim, noise);
  p.lipschitz = inst.norm_M;
  if (inst.mu > 0.0) p.strong_monotonicity = inst.mu;
  p.solution = inst.solution;
  p.affine = inst.op;
  p.resolvent_is_projection = true;
  Point x0 = initial ? *initial : project_box(Point::Zero(p.dim), inst.box);
  require_same_dim(x0.size(), p.dim, "synthetic_problem initial point");
  p.initial_point = [x0](RandomStream&) { return x0; };
  return p;
}

}  // namespace risfbf
