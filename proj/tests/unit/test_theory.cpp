#include <doctest.h>

#include "risfbf/errors.hpp"
#include "risfbf/policy.hpp"
#include "risfbf/problems.hpp"
#include "risfbf/solvers.hpp"
#include "risfbf/theory.hpp"

#include <cmath>

using namespace risfbf;

TEST_CASE("contraction_q") {
  CHECK(contraction_q(0.5, 0.5, 0.25, 1.0, 0.1, 1.0) == doctest::Approx(0.895484).epsilon(1e-6));
  CHECK(contraction_q(0.5, 0.5, 0.25, 1.0, 0.1, 1.0) ==
        doctest::Approx(1.0 - 0.125 * 16 * 2.5 * 0.81 / (31 * 1.25)).epsilon(1e-14));
  CHECK(contraction_q(0.5, 1.0 - 1e-12, 0.25, 1.0, 0.1, 1.0) > 1.0 - 1e-10);
  CHECK(contraction_q(0.5, 0.5, 0.25, 1.0, 1.0 - 1e-9, 1.0) > 1.0 - 1e-10);
  CHECK_THROWS_AS(contraction_q(0.5, 0.5, 0.3, 1.0, 0.1, 1.0), ArgumentError);
}

TEST_CASE("geometric_constant") {
  CHECK(geometric_constant(0.5, 0.25, 1.0, 0.0, 0.0, 0.0) == doctest::Approx(2.0));
  CHECK(geometric_constant(0.5, 0.25, 1.0, 0.0, 0.0, 1.0) == doctest::Approx(10.0));
  CHECK(geometric_constant(0.5, 0.4999999, 1.0, 0.0, 0.0, 1.0) > 1e6);
  const double chat = geometric_constant(0.5, 0.5, 1.0, 0.0, 0.0, 1.0, 0.75);
  CHECK(chat == doctest::Approx(2.0 + 4.0 / (std::exp(1.0) * std::log(1.5))));
  CHECK_THROWS_AS(geometric_constant(0.5, 0.5, 1.0, 0.0, 0.0, 1.0), ArgumentError);
}

TEST_CASE("tau_eps") {
  CHECK(tau_eps(0.9, 0.5, 100.0, 1e-4) == 132);
  CHECK(tau_eps(0.5, 0.9, 100.0, 1e-4) == 132);
  CHECK(tau_eps(0.9, 0.5, 100.0, 100.0) == 1);
  const long t1 = tau_eps(0.9, 0.5, 100.0, 1e-4);
  const long t2 = tau_eps(0.9, 0.5, 100.0, 0.5e-4);
  CHECK(t2 - t1 >= 6);
  CHECK(t2 - t1 <= 7);
  CHECK(tau_eps(0.5, 0.5, 100.0, 1e-4) == tau_eps(0.5, 0.5, 100.0, 1e-4, 0.75));
  CHECK_THROWS_AS(tau_eps(0.9, 0.5, 100.0, 0.0), ArgumentError);
}

TEST_CASE("oracle_cost") {
  CHECK(oracle_cost(BatchSchedule::constant(1), 100, 2) == 200);
  CHECK(oracle_cost(BatchSchedule::geometric(0.5), 3, 2) == 28);
  CHECK(oracle_cost(BatchSchedule::polynomial(1.0), 4, 2) == 20);
  CHECK(oracle_cost(BatchSchedule::polynomial(1.0), 4, 1) == 10);
}

TEST_CASE("poly_rate_constant") {
  const double e = std::exp(1.0);
  const double expect = (1.0 / e) * (1.0 / std::log(2.0)) * (2.0 + 2.0 * (2.0 * e * e - 1.0) / 0.5);
  CHECK(poly_rate_constant(0.5, 1.0, 1.0, 0.0, 0.0, 0.0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(poly_rate_constant(0.5, 1.0, 1.0, 0.0, 0.0, 0.0) == doctest::Approx(30.3117380184).epsilon(1e-10));
  const double small = poly_rate_constant(0.5, 1e-9, 1.0, 0.0, 0.0, 0.0);
  CHECK(std::isfinite(small));
  CHECK(small == doctest::Approx(2.0 + 2.0 * (2.0 - 1.0) / 0.5).epsilon(1e-6));
  CHECK(poly_rate_constant(1.0 - 1e-9, 1.0, 1.0, 0.0, 0.0, 0.0) > 1e8);
}

TEST_CASE("noise_constant_B") {
  CHECK(noise_constant_B(0.0, 0.5, 0.25, 1.0) == 0.0);
  const double rho_bar = 2.5 / (2 * 1.25);
  CHECK(noise_constant_B(2.0, 0.5, 0.25, 1.0) ==
        doctest::Approx(2 * rho_bar * 4.0 * (1 + 2 * 2.5 * 0.0625 / 1.25)));
}

TEST_CASE("property: geometric comparison lemma on a grid") {
  for (double p : {0.3, 0.6, 0.9, 0.99}) {
    for (double frac : {0.1, 0.5, 0.9, 0.999}) {
      const double q = p * frac;
      const double D = 1.0 / (std::exp(1.0) * std::log(p / q));
      // Compared in logs so the far tail does not underflow.
      for (double z = 0.25; z <= 1000.0; z += 0.25) {
        REQUIRE(std::log(z) + z * std::log(q) <= std::log(D) + z * std::log(p) + 1e-12);
      }
    }
  }
}

TEST_CASE("property: envelope and tau_eps dominance on the synthetic instance") {
  const double mu = 1.0, p = 1.0 / 1.02;
  const auto inst = synthetic_build(20, mu, 1.0, BoxSet::uniform(20, -1, 1), 1);
  const auto prob = synthetic_problem(inst, NoiseModel::gaussian(0.1));
  SolverConfig cfg;
  cfg.policy.regime = Regime::strongly_monotone;
  cfg.policy.alpha = AlphaMode::constant(0.1);
  cfg.policy.alpha_bar = 0.1;
  const double Lt = l_tilde(prob.lipschitz);
  cfg.policy.a = mu / (Lt + mu);
  cfg.policy.b = 0.5;
  cfg.batch = BatchSchedule::geometric(p);
  cfg.stop.max_iters = 400;
  const double lam = default_lambda(cfg.policy, prob.lipschitz, mu);
  const double q = contraction_q(cfg.policy.a, cfg.policy.b, lam, mu, 0.1, Lt);
  RandomStream init(0);
  const Point x1 = prob.initial_point(init);
  const double B = noise_constant_B(prob.oracle.variance_bound, cfg.policy.a, lam, Lt);
  const double C = geometric_constant(p, q, (x1 - inst.solution).squaredNorm(), 0.1, 0.1, B);
  const int reps = 20;
  std::vector<double> mse(400, 0.0);
  for (int r = 0; r < reps; ++r) {
    run(prob, cfg, RandomStream(5, r), [&](const IterationView& v) {
      mse[v.k - 1] += (v.x_next - inst.solution).squaredNorm() / reps;
    });
  }
  const double base = std::max(p, q);
  for (long k = 10; k <= 400; ++k) CHECK(mse[k - 1] <= C * std::pow(base, static_cast<double>(k)));
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    long k_eps = -1;
    for (long k = 1; k <= 400; ++k) {
      if (mse[k - 1] <= eps) {
        k_eps = k;
        break;
      }
    }
    REQUIRE(k_eps > 0);
    CHECK(k_eps <= tau_eps(p, q, C, eps));
  }
}
