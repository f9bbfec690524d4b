#pragma once

#include "risfbf/core.hpp"
#include "risfbf/random.hpp"

#include <functional>
#include <string>

namespace risfbf {

struct StochasticOracle {
  Index dim = 0;
  // One draw of V^(x, xi).
  std::function<Point(const Point&, RandomStream&)> sample;
  // Exact V(x); may be empty.
  std::function<Point(const Point&)> mean;
  // Declared bound on sqrt(E||V^ - V||^2).
  double variance_bound = 0.0;
  // Per-batch bias is bias_bound / sqrt(m) along bias_direction (unit norm).
  double bias_bound = 0.0;
  Point bias_direction;

  bool has_mean() const { return static_cast<bool>(mean); }
  bool is_deterministic() const { return has_mean() && variance_bound == 0.0 && bias_bound == 0.0; }
};

struct BatchSchedule {
  enum class Kind { constant, polynomial, geometric, scaled_polynomial };
  Kind kind = Kind::constant;
  long m = 1;
  double theta = 1.0;
  double p = 0.5;
  double scale = 1.0;

  static BatchSchedule constant(long m);
  static BatchSchedule polynomial(double theta);
  static BatchSchedule geometric(double p);
  static BatchSchedule scaled_polynomial(double theta, double scale);

  void validate() const;
  std::string describe() const;
};

long batch_size(const BatchSchedule& schedule, long k);

struct MinibatchEstimate {
  Point estimate;
  long draws_used = 0;
};

MinibatchEstimate minibatch_estimate(const StochasticOracle& oracle, const Point& x, long m,
                                     RandomStream& rng);

// Trace of the sample covariance of the minibatch error e_r = A_r - V(x)
// over `repeats` independent batches.
double empirical_variance(const StochasticOracle& oracle, const Point& x, long m, int repeats,
                          RandomStream& rng);

struct NoiseModel {
  enum class Kind { gaussian, uniform, biased };
  Kind kind = Kind::gaussian;
  double sigma = 0.0;  // per-coordinate standard deviation
  double bias = 0.0;   // b_hat, biased kind only

  static NoiseModel gaussian(double sigma) { return {Kind::gaussian, sigma, 0.0}; }
  static NoiseModel uniform(double sigma) { return {Kind::uniform, sigma, 0.0}; }
  static NoiseModel biased(double sigma, double bias) { return {Kind::biased, sigma, bias}; }
};

// Additive noise around an exact operator. `bias_direction` defaults to e_1.
StochasticOracle make_noisy_oracle(std::function<Point(const Point&)> mean, Index dim,
                                   const NoiseModel& noise, Point bias_direction = Point());

}  // namespace risfbf
