#include "risfbf/stats.hpp"

#include "risfbf/errors.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>

namespace risfbf {

double sample_mean(const std::vector<double>& xs) {
  if (xs.empty()) throw ArgumentError("sample_mean: no samples");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double standard_error(const std::vector<double>& xs) {
  if (xs.size() < 2) throw ArgumentError("standard_error: need at least 2 samples");
  const double m = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

std::pair<double, double> confidence_interval(const std::vector<double>& xs, double level) {
  if (xs.size() < 2) throw ArgumentError("confidence_interval: need at least 2 samples");
  if (!(level > 0.0 && level < 1.0)) throw ArgumentError("confidence_interval: level must lie in (0,1)");
  const double m = sample_mean(xs);
  const double se = standard_error(xs);
  boost::math::students_t dist(static_cast<double>(xs.size() - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.5 * (1.0 - level)));
  return {m - t * se, m + t * se};
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("ls_slope: need >= 2 paired samples");
  const double mx = sample_mean(x), my = sample_mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw ArgumentError("ls_slope: x values are all equal");
  return sxy / sxx;
}

}  // namespace risfbf
