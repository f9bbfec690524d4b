#pragma once

#include "risfbf/core.hpp"
#include "risfbf/oracle.hpp"

#include <functional>
#include <optional>
#include <string>

namespace risfbf {

// Mean operator V(x) = M x + c.
struct AffineOperator {
  Eigen::MatrixXd M;
  Point c;
  Point apply(const Point& x) const { return M * x + c; }
};

// Ground truth for relative error, compared against x.segment(offset, values.size()).
struct GroundTruth {
  Index offset = 0;
  Point values;
};

struct ProblemInstance {
  std::string name;
  Index dim = 0;
  ResolventMap resolvent;
  StochasticOracle oracle;
  double lipschitz = 0.0;
  std::optional<double> strong_monotonicity;
  std::optional<Point> solution;
  std::optional<GroundTruth> truth;
  std::optional<AffineOperator> affine;
  // True when T is a normal cone, so the resolvent is a projection onto dom T.
  bool resolvent_is_projection = true;
  std::function<Point(RandomStream&)> initial_point;
};

}  // namespace risfbf
