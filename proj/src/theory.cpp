#include "risfbf/theory.hpp"

#include "risfbf/errors.hpp"
#include "risfbf/policy.hpp"

#include <algorithm>
#include <cmath>

namespace risfbf {

namespace {
bool open_unit(double v) { return v > 0.0 && v < 1.0; }

void check_alphas(double alpha_1, double alpha_bar) {
  if (!(alpha_bar >= 0.0 && alpha_bar < 1.0)) throw ArgumentError("ᾱ must lie in [0,1)");
  if (!(alpha_1 >= 0.0 && alpha_1 <= alpha_bar)) throw ArgumentError("α₁ must lie in [0,ᾱ]");
}

double start_term(double dist1_sq, double alpha_1, double alpha_bar) {
  return 2.0 * (1.0 - alpha_1) / (1.0 - alpha_bar) * dist1_sq;
}
}  // namespace

double contraction_q(double a, double b, double lambda, double mu, double alpha_bar, double L_tilde) {
  if (!open_unit(a) || !open_unit(b)) throw ArgumentError("contraction_q: a, b must lie in (0,1)");
  if (!(mu > 0.0) || !(L_tilde > 0.0) || !(lambda > 0.0)) {
    throw ArgumentError("contraction_q: μ, L̃, λ must be positive");
  }
  if (!(alpha_bar >= 0.0 && alpha_bar < 1.0)) throw ArgumentError("contraction_q: ᾱ must lie in [0,1)");
  const double bound = std::min({a / (2.0 * mu), b * mu, (1.0 - a) / (2.0 * L_tilde)});
  if (lambda > bound * (1.0 + 1e-12)) throw ArgumentError("contraction_q: λ exceeds the strong-monotone bound");
  const double rho = rho_strong_lower(alpha_bar, lambda, L_tilde, a);
  const double eta = (1.0 - b) * lambda * mu;
  return 1.0 - rho * eta;
}

double noise_constant_B(double s, double a, double lambda, double L_tilde) {
  if (!(s >= 0.0)) throw ArgumentError("noise_constant_B: s must be >= 0");
  const double rho_bar = rho_strong_upper(lambda, L_tilde, a);
  return 2.0 * rho_bar * s * s * (1.0 + 2.0 * (3.0 - a) * lambda * lambda / (1.0 + L_tilde * lambda));
}

double geometric_constant(double p, double q, double dist1_sq, double alpha_1, double alpha_bar,
                          double B, std::optional<double> p_hat) {
  if (!open_unit(p) || !open_unit(q)) throw ArgumentError("geometric_constant: p, q must lie in (0,1)");
  if (!(dist1_sq >= 0.0) || !(B >= 0.0)) throw ArgumentError("geometric_constant: negative input");
  check_alphas(alpha_1, alpha_bar);
  const double first = start_term(dist1_sq, alpha_1, alpha_bar);
  if (p != q) {
    const double ratio = std::min(p / q, q / p);
    return first + 4.0 * B / ((1.0 - alpha_bar) * (1.0 - ratio));
  }
  if (!p_hat) throw ArgumentError("geometric_constant: p̂ is required when p = q");
  if (!(*p_hat > p && *p_hat < 1.0)) throw ArgumentError("geometric_constant: p̂ must lie in (p,1)");
  return first + 4.0 * B / ((1.0 - alpha_bar) * std::exp(1.0) * std::log(*p_hat / q));
}

long tau_eps(double p, double q, double C, double eps, std::optional<double> p_hat) {
  if (!(eps > 0.0)) throw ArgumentError("tau_eps: ε must be positive");
  if (!(C > 0.0)) throw ArgumentError("tau_eps: constant must be positive");
  double base;
  if (p != q) {
    base = std::max(p, q);
  } else {
    base = p_hat.value_or(default_p_hat(p));
  }
  if (!open_unit(base)) throw ArgumentError("tau_eps: rate must lie in (0,1)");
  const double t = std::ceil(std::log(C / eps) / std::log(1.0 / base));
  return std::max(1L, static_cast<long>(t));
}

long oracle_cost(const BatchSchedule& schedule, long K, int calls_per_iter) {
  if (K < 1) throw ArgumentError("oracle_cost: K must be >= 1");
  long total = 0;
  for (long k = 1; k <= K; ++k) total += batch_size(schedule, k);
  return static_cast<long>(calls_per_iter) * total;
}

double poly_rate_constant(double q, double theta, double dist1_sq, double alpha_1,
                          double alpha_bar, double B) {
  if (!open_unit(q)) throw ArgumentError("poly_rate_constant: q must lie in (0,1)");
  if (!(theta > 0.0)) throw ArgumentError("poly_rate_constant: θ must be positive");
  check_alphas(alpha_1, alpha_bar);
  const double lq = std::log(1.0 / q);
  const double lead = std::exp(-theta) * std::pow(theta / lq, theta);
  const double bracket = start_term(dist1_sq, alpha_1, alpha_bar) +
                         2.0 / (1.0 - alpha_bar) * (std::exp(2.0 * theta) / q - 1.0) / (1.0 - q);
  return lead * bracket + 4.0 * B / ((1.0 - alpha_bar) * q * lq);
}

}  // namespace risfbf
