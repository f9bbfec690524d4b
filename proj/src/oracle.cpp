#include "risfbf/oracle.hpp"

#include "risfbf/errors.hpp"

#include <cmath>
#include <sstream>

namespace risfbf {

BatchSchedule BatchSchedule::constant(long m) {
  BatchSchedule s;
  s.kind = Kind::constant;
  s.m = m;
  s.validate();
  return s;
}

BatchSchedule BatchSchedule::polynomial(double theta) {
  BatchSchedule s;
  s.kind = Kind::polynomial;
  s.theta = theta;
  s.validate();
  return s;
}

BatchSchedule BatchSchedule::geometric(double p) {
  BatchSchedule s;
  s.kind = Kind::geometric;
  s.p = p;
  s.validate();
  return s;
}

BatchSchedule BatchSchedule::scaled_polynomial(double theta, double scale) {
  BatchSchedule s;
  s.kind = Kind::scaled_polynomial;
  s.theta = theta;
  s.scale = scale;
  s.validate();
  return s;
}

void BatchSchedule::validate() const {
  switch (kind) {
    case Kind::constant:
      if (m < 1) throw ArgumentError("constant batch size must be >= 1");
      break;
    case Kind::polynomial:
      if (!(theta > 0.0)) throw ArgumentError("polynomial batch exponent must be > 0");
      break;
    case Kind::geometric:
      if (!(p > 0.0 && p < 1.0)) throw ArgumentError("geometric batch rate must lie in (0,1)");
      break;
    case Kind::scaled_polynomial:
      if (!(theta > 0.0)) throw ArgumentError("polynomial batch exponent must be > 0");
      if (!(scale >= 1.0)) throw ArgumentError("batch scale must be >= 1");
      break;
  }
}

std::string BatchSchedule::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::constant: os << "constant(" << m << ")"; break;
    case Kind::polynomial: os << "floor(k^" << theta << ")"; break;
    case Kind::geometric: os << "floor(" << p << "^-k)"; break;
    case Kind::scaled_polynomial: os << "floor(k^" << theta << "/" << scale << ")"; break;
  }
  return os.str();
}

namespace {
long clamp_floor(double v) {
  // guards against overflow on long geometric runs
  if (!(v < 9.0e18)) return static_cast<long>(9.0e18);
  const long f = static_cast<long>(std::floor(v));
  return f < 1 ? 1 : f;
}
}  // namespace

long batch_size(const BatchSchedule& s, long k) {
  if (k < 1) throw ArgumentError("batch_size: k must be >= 1");
  const double kd = static_cast<double>(k);
  switch (s.kind) {
    case BatchSchedule::Kind::constant: return s.m;
    case BatchSchedule::Kind::polynomial: return clamp_floor(std::pow(kd, s.theta));
    case BatchSchedule::Kind::geometric: return clamp_floor(std::pow(s.p, -kd));
    case BatchSchedule::Kind::scaled_polynomial: return clamp_floor(std::pow(kd, s.theta) / s.scale);
  }
  return 1;
}

MinibatchEstimate minibatch_estimate(const StochasticOracle& oracle, const Point& x, long m,
                                     RandomStream& rng) {
  if (m < 1) throw ArgumentError("minibatch_estimate: m must be >= 1");
  require_same_dim(x.size(), oracle.dim, "minibatch_estimate");
  MinibatchEstimate out;
  out.draws_used = m;
  if (oracle.is_deterministic()) {
    out.estimate = oracle.mean(x);
    return out;
  }
  Point sum = Point::Zero(oracle.dim);
  for (long t = 0; t < m; ++t) {
    Point draw = oracle.sample(x, rng);
    if (!draw.allFinite()) {
      throw NumericFailure("oracle draw " + std::to_string(t) + " is not finite", t);
    }
    sum += draw;
  }
  out.estimate = sum / static_cast<double>(m);
  if (oracle.bias_bound > 0.0) {
    out.estimate += (oracle.bias_bound / std::sqrt(static_cast<double>(m))) * oracle.bias_direction;
  }
  return out;
}

double empirical_variance(const StochasticOracle& oracle, const Point& x, long m, int repeats,
                          RandomStream& rng) {
  if (repeats < 2) throw ArgumentError("empirical_variance: repeats must be >= 2");
  if (!oracle.has_mean()) throw UnsupportedOperation("empirical_variance: oracle has no mean");
  const Point v = oracle.mean(x);
  std::vector<Point> errs;
  errs.reserve(static_cast<std::size_t>(repeats));
  Point centre = Point::Zero(oracle.dim);
  for (int r = 0; r < repeats; ++r) {
    errs.push_back(minibatch_estimate(oracle, x, m, rng).estimate - v);
    centre += errs.back();
  }
  centre /= static_cast<double>(repeats);
  double ss = 0.0;
  for (const auto& e : errs) ss += (e - centre).squaredNorm();
  return ss / static_cast<double>(repeats - 1);
}

StochasticOracle make_noisy_oracle(std::function<Point(const Point&)> mean, Index dim,
                                   const NoiseModel& noise, Point bias_direction) {
  if (!(noise.sigma >= 0.0)) throw ArgumentError("noise sigma must be >= 0");
  if (!(noise.bias >= 0.0)) throw ArgumentError("noise bias must be >= 0");
  StochasticOracle o;
  o.dim = dim;
  o.mean = mean;
  o.variance_bound = noise.sigma * std::sqrt(static_cast<double>(dim));
  const double sigma = noise.sigma;
  if (noise.kind == NoiseModel::Kind::uniform) {
    const double half = sigma * std::sqrt(3.0);
    o.sample = [mean, half](const Point& x, RandomStream& rng) {
      Point v = mean(x);
      for (Index i = 0; i < v.size(); ++i) v[i] += rng.uniform(-half, half);
      return v;
    };
  } else {
    o.sample = [mean, sigma](const Point& x, RandomStream& rng) {
      Point v = mean(x);
      if (sigma > 0.0) {
        for (Index i = 0; i < v.size(); ++i) v[i] += sigma * rng.normal();
      }
      return v;
    };
  }
  if (noise.kind == NoiseModel::Kind::biased && noise.bias > 0.0) {
    if (bias_direction.size() == 0) {
      bias_direction = Point::Zero(dim);
      bias_direction[0] = 1.0;
    }
    require_same_dim(bias_direction.size(), dim, "make_noisy_oracle bias direction");
    const double n = bias_direction.norm();
    if (!(n > 0.0)) throw ArgumentError("bias direction must be nonzero");
    o.bias_bound = noise.bias;
    o.bias_direction = bias_direction / n;
  }
  return o;
}

}  // namespace risfbf
