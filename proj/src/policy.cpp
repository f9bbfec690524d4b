#include "risfbf/policy.hpp"

#include "risfbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace risfbf {

namespace {

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

// Shared coupling denominators.
double den_asym(double a) { return 2.0 * a * a - a + 1.0; }
double den_strong(double a) { return 2.0 * a * a - 0.5 * a + 1.0; }

double rho_asym_raw(double ak, double lk, double L, double eps_bar, double abar) {
  return 5.0 * (1.0 - eps_bar) * (1.0 - abar) * (1.0 - abar) / (4.0 * den_asym(ak) * (1.0 + L * lk));
}
double rho_strong_raw(double ak, double lam, double Lt, double a) {
  return (3.0 - a) * (1.0 - ak) * (1.0 - ak) / (2.0 * den_strong(ak) * (1.0 + Lt * lam));
}
double rho_mono_raw(double ak, double lam, double L, double abar) {
  return 3.0 * (1.0 - abar) * (1.0 - abar) / (2.0 * den_asym(ak) * (1.0 + L * lam));
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double alpha_at(const RegimePolicy& policy, long k) {
  if (k < 1) throw ArgumentError("alpha_at: k must be >= 1");
  if (policy.alpha.kind == AlphaMode::Kind::constant) return policy.alpha.value;
  return policy.alpha.value * (1.0 - 1.0 / static_cast<double>(k + 1));
}

double l_tilde(double L) { return std::sqrt(L * L + 0.5); }

double rho_asymptotic(double alpha_k, double lambda_k, double L, double eps_bar, double alpha_bar) {
  if (!(L > 0.0)) throw ArgumentError("rho_asymptotic: L must be positive");
  if (!(lambda_k > 0.0 && lambda_k * L < 0.25)) throw PolicyViolation("λ ∉ (0,1/(4L))");
  if (!open_unit(eps_bar)) throw ArgumentError("rho_asymptotic: ε̄ must lie in (0,1)");
  if (!(alpha_bar >= 0.0 && alpha_bar < 1.0)) throw ArgumentError("rho_asymptotic: ᾱ must lie in [0,1)");
  if (!(alpha_k >= 0.0 && alpha_k <= alpha_bar)) throw PolicyViolation("α_k ∉ [0,ᾱ]");
  return rho_asym_raw(alpha_k, lambda_k, L, eps_bar, alpha_bar);
}

double rho_strong(double alpha_k, double lambda, double L_tilde, double a) {
  if (!open_unit(a)) throw ArgumentError("rho_strong: a must lie in (0,1)");
  if (!(alpha_k >= 0.0 && alpha_k < 1.0)) throw ArgumentError("rho_strong: α_k must lie in [0,1)");
  if (!(lambda > 0.0) || !(L_tilde > 0.0)) throw ArgumentError("rho_strong: λ and L̃ must be positive");
  return rho_strong_raw(alpha_k, lambda, L_tilde, a);
}

double rho_strong_lower(double alpha_bar, double lambda, double L_tilde, double a) {
  if (!open_unit(a)) throw ArgumentError("rho_strong_lower: a must lie in (0,1)");
  if (!(alpha_bar >= 0.0 && alpha_bar < 1.0)) throw ArgumentError("rho_strong_lower: ᾱ must lie in [0,1)");
  return 16.0 * (3.0 - a) * (1.0 - alpha_bar) * (1.0 - alpha_bar) / (31.0 * (1.0 + L_tilde * lambda));
}

double rho_strong_upper(double lambda, double L_tilde, double a) {
  if (!open_unit(a)) throw ArgumentError("rho_strong_upper: a must lie in (0,1)");
  return (3.0 - a) / (2.0 * (1.0 + L_tilde * lambda));
}

double rho_monotone(double alpha_k, double lambda, double L, double alpha_bar) {
  if (!(L > 0.0)) throw ArgumentError("rho_monotone: L must be positive");
  if (!(lambda > 0.0 && lambda * L < 0.5)) throw PolicyViolation("λ ∉ (0,1/(2L))");
  if (!(alpha_bar >= 0.0 && alpha_bar < 1.0)) throw ArgumentError("rho_monotone: ᾱ must lie in [0,1)");
  if (!(alpha_k >= 0.0 && alpha_k < 1.0)) throw ArgumentError("rho_monotone: α_k must lie in [0,1)");
  return rho_mono_raw(alpha_k, lambda, L, alpha_bar);
}

double lambda_strong(double mu, double L, double a, double b) {
  if (!(mu > 0.0)) throw ArgumentError("lambda_strong: μ must be positive");
  if (!(L > 0.0)) throw ArgumentError("lambda_strong: L must be positive");
  if (!open_unit(a) || !open_unit(b)) throw ArgumentError("lambda_strong: a, b must lie in (0,1)");
  const double lt = l_tilde(L);
  return std::min({a / (2.0 * mu), b * mu, (1.0 - a) / (2.0 * lt)});
}

double rho_constant_bound(double alpha, double lambda, double L) {
  return 5.0 * (1.0 - alpha) * (1.0 - alpha) / (4.0 * (1.0 + L * lambda) * den_asym(alpha));
}

double rho_larger_step_bound(double alpha, double lambda, double L, double nu) {
  return (3.0 - nu) * (1.0 - alpha) * (1.0 - alpha) / (2.0 * (1.0 + L * lambda) * den_asym(alpha));
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::asymptotic: return "asymptotic";
    case Regime::constant: return "constant";
    case Regime::larger_step: return "larger_step";
    case Regime::strongly_monotone: return "strongly_monotone";
    case Regime::monotone_gap: return "monotone_gap";
    case Regime::custom: return "custom";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  for (Regime r : {Regime::asymptotic, Regime::constant, Regime::larger_step,
                   Regime::strongly_monotone, Regime::monotone_gap, Regime::custom}) {
    if (s == regime_name(r)) return r;
  }
  throw ArgumentError("unknown regime '" + s + "'");
}

double default_lambda(const RegimePolicy& policy, double L, std::optional<double> mu) {
  if (policy.lambda) return *policy.lambda;
  switch (policy.regime) {
    case Regime::asymptotic:
    case Regime::constant: return 1.0 / (8.0 * L);
    case Regime::larger_step: return (1.0 - policy.nu) / (4.0 * L);
    case Regime::strongly_monotone:
      if (!mu || !(*mu > 0.0)) throw ArgumentError("strongly_monotone regime needs μ > 0");
      return lambda_strong(*mu, L, policy.a, policy.b);
    case Regime::monotone_gap:
    case Regime::custom: return 1.0 / (4.0 * L);
  }
  return 1.0 / (4.0 * L);
}

std::vector<std::string> validate(const RegimePolicy& policy, double L, std::optional<double> mu) {
  std::vector<std::string> out;
  if (!(L > 0.0)) {
    out.push_back("L must be positive");
    return out;
  }
  const double av = policy.alpha.value;
  const double abar = policy.effective_alpha_bar();
  if (policy.alpha.kind == AlphaMode::Kind::increasing) {
    if (!open_unit(av)) out.push_back("α₀ ∉ (0,1)");
  } else if (!(av >= 0.0 && av < 1.0)) {
    out.push_back("α ∉ [0,1)");
  }
  if (!(abar >= 0.0 && abar < 1.0)) out.push_back("ᾱ ∉ [0,1)");
  if (av > abar) out.push_back("α exceeds ᾱ");

  double lam = 0.0;
  try {
    lam = default_lambda(policy, L, mu);
  } catch (const std::exception& e) {
    out.push_back(e.what());
    return out;
  }
  if (!(lam > 0.0)) out.push_back("λ must be positive");
  const double Ll = L * lam;

  switch (policy.regime) {
    case Regime::asymptotic:
      if (!(Ll < 0.25)) out.push_back("λ ∉ (0,1/(4L))");
      if (!open_unit(policy.eps_bar)) out.push_back("ε̄ ∉ (0,1)");
      if (policy.rho) out.push_back("asymptotic regime computes ρ_k; explicit ρ ignored");
      break;
    case Regime::constant:
      if (policy.alpha.kind != AlphaMode::Kind::constant) out.push_back("constant regime needs constant α");
      if (!(Ll < 0.25)) out.push_back("λ ∉ (0,1/(4L))");
      if (policy.rho && !(*policy.rho < rho_constant_bound(av, lam, L)))
        out.push_back("ρ ≥ 5(1−α)²/(4(1+Lλ)(2α²+1−α)) = " + fmt(rho_constant_bound(av, lam, L)));
      break;
    case Regime::larger_step:
      if (policy.alpha.kind != AlphaMode::Kind::constant) out.push_back("larger_step regime needs constant α");
      if (!open_unit(policy.nu)) out.push_back("ν ∉ (0,1)");
      if (!(Ll < 0.5 * (1.0 - policy.nu))) out.push_back("λ ∉ (0,(1−ν)/(2L))");
      if (policy.rho && !(*policy.rho < rho_larger_step_bound(av, lam, L, policy.nu)))
        out.push_back("ρ ≥ (3−ν)(1−α)²/(2(1+Lλ)(2α²+1−α)) = " +
                      fmt(rho_larger_step_bound(av, lam, L, policy.nu)));
      break;
    case Regime::strongly_monotone: {
      if (!mu || !(*mu > 0.0)) {
        out.push_back("μ > 0 required");
        break;
      }
      if (!open_unit(policy.a)) out.push_back("a ∉ (0,1)");
      if (!open_unit(policy.b)) out.push_back("b ∉ (0,1)");
      if (open_unit(policy.a) && open_unit(policy.b)) {
        const double ls = lambda_strong(*mu, L, policy.a, policy.b);
        if (lam > ls * (1.0 + 1e-12)) out.push_back("λ > min{a/(2μ), bμ, (1−a)/(2L̃)} = " + fmt(ls));
      }
      if (policy.rho) out.push_back("strongly_monotone regime computes ρ_k; explicit ρ ignored");
      break;
    }
    case Regime::monotone_gap:
      if (!(Ll < 0.5)) out.push_back("λ ∉ (0,1/(2L))");
      if (policy.rho) out.push_back("monotone_gap regime computes ρ_k; explicit ρ ignored");
      break;
    case Regime::custom:
      if (!policy.rho) {
        out.push_back("custom regime needs an explicit ρ");
        break;
      }
      if (!(*policy.rho > 0.0)) out.push_back("ρ must be positive");
      if (!(Ll < 0.25)) out.push_back("λ ∉ (0,1/(4L))");
      if (!(*policy.rho < rho_constant_bound(abar, lam, L)))
        out.push_back("ρ ≥ 5(1−ᾱ)²/(4(1+Lλ)(2ᾱ²+1−ᾱ)) = " + fmt(rho_constant_bound(abar, lam, L)) +
                      " (no convergence guarantee)");
      break;
  }
  return out;
}

StepParameters parameters_at(const RegimePolicy& policy, long k, double L, std::optional<double> mu) {
  StepParameters sp;
  sp.alpha = alpha_at(policy, k);
  sp.lambda = default_lambda(policy, L, mu);
  const double abar = policy.effective_alpha_bar();
  // Formulas are evaluated unchecked: validate() has already reported any violation.
  switch (policy.regime) {
    case Regime::asymptotic:
      sp.rho = rho_asym_raw(sp.alpha, sp.lambda, L, policy.eps_bar, abar);
      break;
    case Regime::constant:
      sp.rho = policy.rho.value_or((1.0 - policy.eps_bar) * rho_constant_bound(sp.alpha, sp.lambda, L));
      break;
    case Regime::larger_step:
      sp.rho = policy.rho.value_or((1.0 - policy.eps_bar) *
                                   rho_larger_step_bound(sp.alpha, sp.lambda, L, policy.nu));
      break;
    case Regime::strongly_monotone:
      sp.rho = rho_strong_raw(sp.alpha, sp.lambda, l_tilde(L), policy.a);
      break;
    case Regime::monotone_gap:
      sp.rho = rho_mono_raw(sp.alpha, sp.lambda, L, abar);
      break;
    case Regime::custom:
      if (!policy.rho) throw ArgumentError("custom regime needs an explicit ρ");
      sp.rho = *policy.rho;
      break;
  }
  return sp;
}

}  // namespace risfbf
