#pragma once

#include "risfbf/oracle.hpp"

#include <optional>

namespace risfbf {

// q = 1 - rho eta with rho the strongly monotone lower bound and eta = (1-b) lambda mu.
double contraction_q(double a, double b, double lambda, double mu, double alpha_bar, double L_tilde);

// B = 2 rho_bar s^2 (1 + 2(3-a) lambda^2 / (1 + L_tilde lambda)).
double noise_constant_B(double s, double a, double lambda, double L_tilde);

// C(p,q) for p != q, C_hat for p == q (p_hat required then).
double geometric_constant(double p, double q, double dist1_sq, double alpha_1, double alpha_bar,
                          double B, std::optional<double> p_hat = std::nullopt);

// Iterations until the envelope drops below eps; never less than 1.
long tau_eps(double p, double q, double C, double eps, std::optional<double> p_hat = std::nullopt);

long oracle_cost(const BatchSchedule& schedule, long K, int calls_per_iter);

double poly_rate_constant(double q, double theta, double dist1_sq, double alpha_1,
                          double alpha_bar, double B);

inline double default_p_hat(double p) { return 0.5 * (p + 1.0); }

}  // namespace risfbf
