#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string_view>
#include <vector>

namespace risfbf {

using Point = Eigen::VectorXd;
using Index = Eigen::Index;

struct BoxSet {
  Point lower;
  Point upper;

  BoxSet() = default;
  BoxSet(Point lo, Point hi);
  static BoxSet uniform(Index dim, double lo, double hi);

  Index dim() const { return lower.size(); }
  bool contains(const Point& x, double tol = 0.0) const;
};

struct BallSet {
  Point center;
  double radius = 0.0;

  BallSet() = default;
  BallSet(Point c, double r);

  Index dim() const { return center.size(); }
  bool contains(const Point& x, double tol = 0.0) const;
};

// J_{lambda T}(x). For normal cones lambda is ignored.
using ResolventMap = std::function<Point(const Point&, double)>;
using LinearMap = std::function<Point(const Point&)>;

struct IndexRange {
  Index begin = 0;
  Index end = 0;
  Index size() const { return end - begin; }
};

struct ResolventBlock {
  ResolventMap map;
  IndexRange range;
};

Point project_box(const Point& x, const BoxSet& box);
Point project_ball(const Point& x, const BallSet& ball);

ResolventMap identity_resolvent();
ResolventMap box_resolvent(BoxSet box);
ResolventMap ball_resolvent(BallSet ball);
// Blockwise resolvent of a product operator. Ranges must partition [0, d).
ResolventMap resolvent_product(std::vector<ResolventBlock> blocks);

// Largest singular value of `apply` by power iteration on adjoint(apply(.)),
// started from the normalized all-ones vector.
double operator_norm(const LinearMap& apply, const LinearMap& adjoint, Index dim,
                     int iters = 1000, double tol = 1e-10);

void require_same_dim(Index a, Index b, std::string_view where);
bool all_finite(const Point& x);

}  // namespace risfbf
