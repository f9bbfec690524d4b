#pragma once

#include <utility>
#include <vector>

namespace risfbf {

double sample_mean(const std::vector<double>& xs);
// Standard error of the mean (sample std / sqrt(n)).
double standard_error(const std::vector<double>& xs);
// Two-sided Student-t interval around the mean.
std::pair<double, double> confidence_interval(const std::vector<double>& xs, double level);
// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace risfbf
