#include "risfbf/errors.hpp"
#include "risfbf/problems.hpp"

#include <cmath>
#include <set>

namespace risfbf {

Index CapInstance::dual_dim() const {
  Index n = 0;
  for (const auto& g : groups) n += static_cast<Index>(g.size());
  return n;
}

CapInstance cap_build(std::uint64_t seed, const CapParams& params) {
  if (params.groups < 1 || params.group_size < 1) throw ArgumentError("cap_build: empty groups");
  if (params.overlap < 0 || params.overlap >= params.group_size) {
    throw ArgumentError("cap_build: overlap must lie in [0, group_size)");
  }
  if (!(params.eta > 0.0)) throw ArgumentError("cap_build: η must be positive");
  if (!(params.noise_std >= 0.0)) throw ArgumentError("cap_build: noise std must be >= 0");
  CapInstance inst;
  const int stride = params.group_size - params.overlap;
  inst.d = static_cast<Index>((params.groups - 1) * stride + params.group_size);
  for (int g = 0; g < params.groups; ++g) {
    std::vector<Index> idx;
    for (int j = 0; j < params.group_size; ++j) idx.push_back(static_cast<Index>(g * stride + j));
    inst.groups.push_back(std::move(idx));
  }
  inst.eta = params.eta;
  inst.noise_std = params.noise_std;

  std::set<Index> support;
  for (int g : params.support_groups) {
    if (g < 1 || g > params.groups) throw ArgumentError("cap_build: support group out of range");
    for (Index i : inst.groups[static_cast<std::size_t>(g - 1)]) support.insert(i);
  }
  RandomStream rng(seed, 2);
  inst.w_true = Point::Zero(inst.d);
  for (Index i : support) inst.w_true[i] = rng.normal();
  inst.radius = params.radius.value_or(10.0 * inst.w_true.norm());
  if (!(inst.radius > 0.0)) throw ArgumentError("cap_build: radius must be positive");
  return inst;
}

Point cap_apply_L(const CapInstance& inst, const Point& w) {
  require_same_dim(w.size(), inst.d, "cap_apply_L");
  Point v(inst.dual_dim());
  Index pos = 0;
  for (const auto& g : inst.groups)
    for (Index i : g) v[pos++] = inst.eta * w[i];
  return v;
}

Point cap_apply_L_adjoint(const CapInstance& inst, const Point& v) {
  require_same_dim(v.size(), inst.dual_dim(), "cap_apply_L_adjoint");
  Point w = Point::Zero(inst.d);
  Index pos = 0;
  for (const auto& g : inst.groups)
    for (Index i : g) w[i] += inst.eta * v[pos++];
  return w;
}

namespace {
// (L* v, -L w) part shared by sample and mean.
Point coupling(const CapInstance& inst, const Point& z) {
  require_same_dim(z.size(), inst.dim(), "cap operator");
  const Point w = z.head(inst.d);
  const Point v = z.tail(inst.dual_dim());
  Point out(inst.dim());
  out.head(inst.d) = cap_apply_L_adjoint(inst, v);
  out.tail(inst.dual_dim()) = -cap_apply_L(inst, w);
  return out;
}
}  // namespace

Point cap_oracle_sample(const CapInstance& inst, const Point& z, const Point& a, double b) {
  require_same_dim(a.size(), inst.d, "cap_oracle_sample design row");
  Point out = coupling(inst, z);
  out.head(inst.d) += a * (a.dot(z.head(inst.d)) - b);
  return out;
}

Point cap_mean(const CapInstance& inst, const Point& z) {
  Point out = coupling(inst, z);
  out.head(inst.d) += z.head(inst.d) - inst.w_true;
  return out;
}

double cap_lipschitz(const CapInstance& inst) {
  auto apply = [&inst](const Point& z) {
    Point out = coupling(inst, z);
    out.head(inst.d) += z.head(inst.d);
    return out;
  };
  auto adjoint = [&inst](const Point& z) {
    Point out = -coupling(inst, z);
    out.head(inst.d) += z.head(inst.d);
    return out;
  };
  return operator_norm(apply, adjoint, inst.dim(), 10000, 1e-12);
}

ProblemInstance cap_problem(const CapInstance& inst) {
  ProblemInstance p;
  p.name = "cap";
  p.dim = inst.dim();
  std::vector<ResolventBlock> blocks;
  blocks.push_back({ball_resolvent(BallSet(Point::Zero(inst.d), inst.radius)), {0, inst.d}});
  Index pos = inst.d;
  for (const auto& g : inst.groups) {
    const Index n = static_cast<Index>(g.size());
    blocks.push_back({ball_resolvent(BallSet(Point::Zero(n), 1.0)), {pos, pos + n}});
    pos += n;
  }
  p.resolvent = resolvent_product(std::move(blocks));
  p.oracle.dim = p.dim;
  p.oracle.sample = [inst](const Point& z, RandomStream& rng) {
    Point a(inst.d);
    for (Index i = 0; i < inst.d; ++i) a[i] = rng.normal();
    const double b = a.dot(inst.w_true) + inst.noise_std * rng.normal();
    return cap_oracle_sample(inst, z, a, b);
  };
  p.oracle.mean = [inst](const Point& z) { return cap_mean(inst, z); };
  // E||a a'e - e - a eps||^2 = (d+1)||e||^2 + d sigma^2 with ||e|| <= D + ||w_true||.
  const double e = inst.radius + inst.w_true.norm();
  const double dd = static_cast<double>(inst.d);
  p.oracle.variance_bound = std::sqrt((dd + 1.0) * e * e + dd * inst.noise_std * inst.noise_std);
  p.lipschitz = cap_lipschitz(inst);
  p.truth = GroundTruth{0, inst.w_true};
  p.resolvent_is_projection = true;
  const Index dim = p.dim;
  p.initial_point = [dim](RandomStream&) { return Point::Zero(dim); };
  return p;
}

}  // namespace risfbf
