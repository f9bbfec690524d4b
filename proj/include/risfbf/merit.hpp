#pragma once

#include "risfbf/core.hpp"
#include "risfbf/problem.hpp"
#include "risfbf/random.hpp"

namespace risfbf {

// C = dom T  intersected with  {||x - anchor|| <= radius}.
struct GapRegion {
  Point anchor;
  double radius = 1.0;
  ResolventMap domain_projection;  // projection onto dom T (lambda ignored)
};

// Projection onto the gap region. The anchor must be feasible.
Point project_gap_region(const Point& y, const GapRegion& region);
bool in_gap_region(const Point& x, const GapRegion& region, double tol = 1e-10);

// ||x - J(x - lambda V(x))|| with the exact mean.
double residual(const ProblemInstance& prob, const Point& x, double lambda);
// Same, with V replaced by an average of `batch` draws.
double residual_estimated(const ProblemInstance& prob, const Point& x, double lambda,
                          RandomStream& rng, long batch = 10000);

// sup_{p in C} <M p + c, x - p>.
double dual_gap_affine(const AffineOperator& op, const Point& x, const GapRegion& region,
                       int inner_budget = 100000);
double dual_gap_affine(const ProblemInstance& prob, const Point& x, const GapRegion& region,
                       int inner_budget = 100000);

double relative_error(const Point& w, const Point& w_true);

double energy_H(const Point& x_k, const Point& x_km1, const Point& x_bar, double alpha_k,
                double rho_k, double lambda, double L_tilde, double a);
double energy_Q(const Point& x_k, const Point& x_km1, const Point& p, double alpha_k,
                double rho_k, double lambda_k, double L);

}  // namespace risfbf
