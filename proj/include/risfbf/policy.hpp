#pragma once

#include <optional>
#include <string>
#include <vector>

namespace risfbf {

enum class Regime { asymptotic, constant, larger_step, strongly_monotone, monotone_gap, custom };

struct AlphaMode {
  enum class Kind { constant, increasing };
  Kind kind = Kind::constant;
  double value = 0.0;  // alpha, or alpha_0 for the increasing law

  static AlphaMode constant(double a) { return {Kind::constant, a}; }
  static AlphaMode increasing(double a0) { return {Kind::increasing, a0}; }
};

struct RegimePolicy {
  Regime regime = Regime::asymptotic;
  AlphaMode alpha;
  std::optional<double> alpha_bar;  // defaults to the alpha mode's value
  double eps_bar = 0.1;
  double nu = 0.5;
  double a = 0.5;
  double b = 0.5;
  std::optional<double> lambda;  // defaults per regime, see default_lambda
  std::optional<double> rho;     // constant / larger_step / custom

  double effective_alpha_bar() const { return alpha_bar.value_or(alpha.value); }
};

struct StepParameters {
  double alpha = 0.0;
  double lambda = 0.0;
  double rho = 1.0;
};

double alpha_at(const RegimePolicy& policy, long k);

double l_tilde(double L);

double rho_asymptotic(double alpha_k, double lambda_k, double L, double eps_bar, double alpha_bar);
double rho_strong(double alpha_k, double lambda, double L_tilde, double a);
// Rate-analysis constant 16(3-a)(1-abar)^2/(31(1+Lt lam)) used in q; not an ordering bound on rho_k.
double rho_strong_lower(double alpha_bar, double lambda, double L_tilde, double a);
double rho_strong_upper(double lambda, double L_tilde, double a);
double rho_monotone(double alpha_k, double lambda, double L, double alpha_bar);
double lambda_strong(double mu, double L, double a, double b);

// Upper bounds on constant rho from the two constant-parameter corollaries.
double rho_constant_bound(double alpha, double lambda, double L);
double rho_larger_step_bound(double alpha, double lambda, double L, double nu);

const char* regime_name(Regime r);
Regime parse_regime(const std::string& s);

double default_lambda(const RegimePolicy& policy, double L, std::optional<double> mu);

std::vector<std::string> validate(const RegimePolicy& policy, double L, std::optional<double> mu);

// alpha_k, lambda, rho_k for iteration k under the regime's law.
StepParameters parameters_at(const RegimePolicy& policy, long k, double L, std::optional<double> mu);

}  // namespace risfbf
