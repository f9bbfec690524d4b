#include "risfbf/merit.hpp"

#include "risfbf/errors.hpp"

#include <cmath>

namespace risfbf {

Point project_gap_region(const Point& y, const GapRegion& region) {
  const Point& xs = region.anchor;
  const double D = region.radius;
  auto dom = [&](const Point& v) { return region.domain_projection(v, 1.0); };
  auto at = [&](double nu) { return dom((y + nu * xs) / (1.0 + nu)); };
  Point p = at(0.0);
  if ((p - xs).norm() <= D) return p;
  // ||p(nu) - xs|| is non-increasing in the multiplier nu of the ball constraint.
  double lo = 0.0, hi = 1.0;
  Point phi = at(hi);
  while ((phi - xs).norm() > D) {
    lo = hi;
    hi *= 2.0;
    phi = at(hi);
    if (hi > 1e300) break;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    Point pm = at(mid);
    if ((pm - xs).norm() > D) {
      lo = mid;
    } else {
      hi = mid;
      phi = std::move(pm);
    }
  }
  return phi;
}

bool in_gap_region(const Point& x, const GapRegion& region, double tol) {
  if ((x - region.anchor).norm() > region.radius + tol) return false;
  return (region.domain_projection(x, 1.0) - x).norm() <= tol;
}

double residual(const ProblemInstance& prob, const Point& x, double lambda) {
  if (!prob.oracle.has_mean()) {
    throw UnsupportedOperation("residual: problem exposes no mean operator");
  }
  if (!(lambda > 0.0)) throw ArgumentError("residual: λ must be positive");
  require_same_dim(x.size(), prob.dim, "residual");
  return (x - prob.resolvent(x - lambda * prob.oracle.mean(x), lambda)).norm();
}

double residual_estimated(const ProblemInstance& prob, const Point& x, double lambda,
                          RandomStream& rng, long batch) {
  if (!(lambda > 0.0)) throw ArgumentError("residual: λ must be positive");
  Point v = minibatch_estimate(prob.oracle, x, batch, rng).estimate;
  return (x - prob.resolvent(x - lambda * v, lambda)).norm();
}

double dual_gap_affine(const AffineOperator& op, const Point& x, const GapRegion& region,
                       int inner_budget) {
  const Index d = x.size();
  require_same_dim(op.M.rows(), d, "dual_gap_affine");
  require_same_dim(op.M.cols(), d, "dual_gap_affine");
  require_same_dim(region.anchor.size(), d, "dual_gap_affine anchor");
  if (!(region.radius > 0.0)) throw ArgumentError("dual_gap_affine: radius must be positive");

  const Eigen::MatrixXd S = op.M + op.M.transpose();
  const double s_norm = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .cwiseAbs()
                            .maxCoeff();
  const double m_norm = std::max(op.M.norm(), 1.0);
  // A (near) linear objective has no curvature; a long step lands on the maximizer directly.
  const double step = s_norm > 1e-8 * m_norm ? 1.0 / s_norm : 1e6 / m_norm;

  auto objective = [&](const Point& p) { return (op.M * p + op.c).dot(x - p); };
  const Eigen::MatrixXd Mt = op.M.transpose();
  Point p = region.anchor;
  double f = objective(p);
  for (int it = 0; it < inner_budget; ++it) {
    Point grad = Mt * (x - p) - (op.M * p + op.c);
    Point next = project_gap_region(p + step * grad, region);
    const double fn = objective(next);
    const double change = std::abs(fn - f);
    p = std::move(next);
    f = fn;
    if (change <= 1e-10) break;
  }
  if (in_gap_region(x, region, 1e-10)) f = std::max(f, 0.0);
  return f;
}

double dual_gap_affine(const ProblemInstance& prob, const Point& x, const GapRegion& region,
                       int inner_budget) {
  if (!prob.affine) throw UnsupportedOperation("dual_gap_affine: mean operator is not affine");
  return dual_gap_affine(*prob.affine, x, region, inner_budget);
}

double relative_error(const Point& w, const Point& w_true) {
  require_same_dim(w.size(), w_true.size(), "relative_error");
  const double n = w_true.norm();
  if (!(n > 0.0)) throw ArgumentError("relative_error: ground truth is zero");
  return (w - w_true).norm() / n;
}

double energy_H(const Point& x_k, const Point& x_km1, const Point& x_bar, double alpha_k,
                double rho_k, double lambda, double L_tilde, double a) {
  const double coef = (1.0 - alpha_k) * ((3.0 - a) / (2.0 * rho_k * (1.0 + L_tilde * lambda)) - 1.0);
  return (x_k - x_bar).squaredNorm() + coef * (x_k - x_km1).squaredNorm() -
         alpha_k * (x_km1 - x_bar).squaredNorm();
}

double energy_Q(const Point& x_k, const Point& x_km1, const Point& p, double alpha_k,
                double rho_k, double lambda_k, double L) {
  const double phi_k = 0.5 * (x_k - p).squaredNorm();
  const double phi_km1 = 0.5 * (x_km1 - p).squaredNorm();
  const double delta = 0.5 * (x_k - x_km1).squaredNorm();
  return phi_k - alpha_k * phi_km1 +
         (1.0 - alpha_k) * (5.0 / (4.0 * rho_k * (1.0 + L * lambda_k)) - 1.0) * delta;
}

}  // namespace risfbf
