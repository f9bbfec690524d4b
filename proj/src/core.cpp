#include "risfbf/core.hpp"

#include "risfbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace risfbf {

void require_same_dim(Index a, Index b, std::string_view where) {
  if (a != b) {
    throw ArgumentError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                        " vs " + std::to_string(b) + ")");
  }
}

bool all_finite(const Point& x) { return x.allFinite(); }

BoxSet::BoxSet(Point lo, Point hi) : lower(std::move(lo)), upper(std::move(hi)) {
  require_same_dim(lower.size(), upper.size(), "BoxSet");
  if ((lower.array() > upper.array()).any()) throw ArgumentError("BoxSet: lower > upper");
}

BoxSet BoxSet::uniform(Index dim, double lo, double hi) {
  return BoxSet(Point::Constant(dim, lo), Point::Constant(dim, hi));
}

bool BoxSet::contains(const Point& x, double tol) const {
  require_same_dim(x.size(), dim(), "BoxSet::contains");
  return ((x.array() >= lower.array() - tol) && (x.array() <= upper.array() + tol)).all();
}

BallSet::BallSet(Point c, double r) : center(std::move(c)), radius(r) {
  if (!(r >= 0.0)) throw ArgumentError("BallSet: negative radius");
}

bool BallSet::contains(const Point& x, double tol) const {
  require_same_dim(x.size(), dim(), "BallSet::contains");
  return (x - center).norm() <= radius + tol;
}

Point project_box(const Point& x, const BoxSet& box) {
  require_same_dim(x.size(), box.dim(), "project_box");
  return x.cwiseMax(box.lower).cwiseMin(box.upper);
}

Point project_ball(const Point& x, const BallSet& ball) {
  require_same_dim(x.size(), ball.dim(), "project_ball");
  Point diff = x - ball.center;
  const double n = diff.norm();
  if (n <= ball.radius) return x;
  return ball.center + (ball.radius / n) * diff;
}

ResolventMap identity_resolvent() {
  return [](const Point& x, double) { return x; };
}

ResolventMap box_resolvent(BoxSet box) {
  return [box = std::move(box)](const Point& x, double) { return project_box(x, box); };
}

ResolventMap ball_resolvent(BallSet ball) {
  return [ball = std::move(ball)](const Point& x, double) { return project_ball(x, ball); };
}

ResolventMap resolvent_product(std::vector<ResolventBlock> blocks) {
  if (blocks.empty()) throw ArgumentError("resolvent_product: no blocks");
  std::sort(blocks.begin(), blocks.end(),
            [](const ResolventBlock& a, const ResolventBlock& b) { return a.range.begin < b.range.begin; });
  Index expected = 0;
  for (const auto& b : blocks) {
    if (!b.map) throw ArgumentError("resolvent_product: empty resolvent");
    if (b.range.size() <= 0) throw ArgumentError("resolvent_product: empty index range");
    if (b.range.begin < expected) throw ArgumentError("resolvent_product: overlapping ranges");
    if (b.range.begin > expected) throw ArgumentError("resolvent_product: ranges leave a gap");
    expected = b.range.end;
  }
  const Index dim = expected;
  return [blocks = std::move(blocks), dim](const Point& x, double lambda) {
    require_same_dim(x.size(), dim, "resolvent_product");
    Point out(dim);
    for (const auto& b : blocks) {
      Point part = b.map(x.segment(b.range.begin, b.range.size()), lambda);
      require_same_dim(part.size(), b.range.size(), "resolvent_product block");
      out.segment(b.range.begin, b.range.size()) = part;
    }
    return out;
  };
}

double operator_norm(const LinearMap& apply, const LinearMap& adjoint, Index dim, int iters,
                     double tol) {
  if (iters < 1) throw ArgumentError("operator_norm: iters must be >= 1");
  if (dim < 1) throw ArgumentError("operator_norm: dim must be >= 1");
  if (!(tol > 0.0)) throw ArgumentError("operator_norm: tol must be positive");
  Point v = Point::Ones(dim) / std::sqrt(static_cast<double>(dim));
  double est = 0.0;
  for (int it = 0; it < iters; ++it) {
    Point av = apply(v);
    const double next = av.norm();  // ||A v|| with ||v|| = 1
    Point w = adjoint(av);
    const double wn = w.norm();
    if (wn == 0.0) return next;  // v in the null space; for the zero map this is 0
    v = w / wn;
    // tighter than tol: the increment underestimates the remaining error
    if (it > 0 && std::abs(next - est) <= 0.1 * tol) return next;
    est = next;
  }
  return est;
}

}  // namespace risfbf
