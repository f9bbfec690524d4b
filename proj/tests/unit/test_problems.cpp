#include <doctest.h>

#include "risfbf/errors.hpp"
#include "risfbf/merit.hpp"
#include "risfbf/problems.hpp"

#include <cmath>
#include <set>

using namespace risfbf;

namespace {

Point random_point(RandomStream& rng, Index d, double lo, double hi) {
  Point p(d);
  for (Index i = 0; i < d; ++i) p[i] = rng.uniform(lo, hi);
  return p;
}

Point gaussian_point(RandomStream& rng, Index d) {
  Point p(d);
  for (Index i = 0; i < d; ++i) p[i] = rng.normal();
  return p;
}

// Norm-level 3-sigma band: ||mean - MC mean|| <= 3 sqrt(sum of per-coordinate variances / n).
struct MonteCarlo {
  Point sum, sumsq;
  long n = 0;
  explicit MonteCarlo(Index d) : sum(Point::Zero(d)), sumsq(Point::Zero(d)) {}
  void add(const Point& v) {
    sum += v;
    sumsq += v.cwiseProduct(v);
    ++n;
  }
  Point mean() const { return sum / static_cast<double>(n); }
  double band() const {
    const Point m = mean();
    const Point var = (sumsq / static_cast<double>(n) - m.cwiseProduct(m)) * (n / (n - 1.0));
    return 3.0 * std::sqrt(var.sum() / static_cast<double>(n));
  }
};

}  // namespace

TEST_CASE("cournot_build constants") {
  const auto c2 = cournot_build(100.0, 1);
  CHECK(c2.L_R == doctest::Approx(1.1));
  CHECK(c2.L_D == doctest::Approx(10.0));
  CHECK(c2.L_C == doctest::Approx(88.9));
  CHECK(c2.b_hat[0] == doctest::Approx(88.9));
  CHECK(c2.eps == doctest::Approx(0.1));
  CHECK(c2.L_C + c2.L_R + c2.L_D == doctest::Approx(c2.L_V));
  for (int i = 0; i < c2.n; ++i) {
    CHECK(c2.b_hat[i] >= 0.0);
    CHECK(c2.b_hat[i] <= c2.L_C);
    CHECK(c2.a[i] >= 2.0);
    CHECK(c2.a[i] <= 3.0);
  }
  const auto c1 = cournot_build(10.0, 1);
  CHECK(c1.L_D == doctest::Approx(1.0));
  CHECK(c1.L_C == doctest::Approx(7.9));
  const auto again = cournot_build(100.0, 1);
  CHECK((again.a - c2.a).norm() == 0.0);
  CHECK((again.b_hat - c2.b_hat).norm() == 0.0);
  CHECK_THROWS_AS(cournot_build(1.0, 1), ArgumentError);
}

TEST_CASE("cournot oracle sample and mean") {
  CournotInstance inst;
  inst.n = 1;
  inst.r = 0.1;
  inst.d = 1.0;
  inst.a = Point::Constant(1, 2.0);
  inst.b_hat = Point::Constant(1, 3.0);
  inst.eps = 1.0;
  inst.box = BoxSet::uniform(1, 0, 10);
  CHECK(cournot_oracle_sample(inst, Point::Constant(1, 1.0), Point::Constant(1, -0.5))[0] ==
        doctest::Approx(3.7));
  // x/eps <= -5: recourse inactive, D = x/eps.
  const double c = -6.0;
  const Point v = cournot_oracle_sample(inst, Point::Constant(1, c), Point::Constant(1, -5.0));
  CHECK(v[0] == doctest::Approx(3.0 * c + 2.0 + 0.1 * (2 * c) - 1.0 + c));
  const Point z = cournot_oracle_sample(inst, Point::Zero(1), Point::Constant(1, -1.0));
  CHECK(z[0] == doctest::Approx(2.0 - 1.0 - 1.0));

  CHECK(expected_min_uniform(0.0) == doctest::Approx(-2.5));
  CHECK(expected_min_uniform(3.0) == doctest::Approx(-2.5));
  CHECK(expected_min_uniform(-5.0) == doctest::Approx(-5.0));
  CHECK(expected_min_uniform(-7.0) == doctest::Approx(-7.0));
  CHECK(expected_min_uniform(-2.5) == doctest::Approx(-3.125));
  RandomStream rng(1);
  for (double cc : {0.0, -2.5}) {
    double s = 0.0, s2 = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
      const double m = std::min(cc, rng.uniform(-5.0, 0.0));
      s += m;
      s2 += m * m;
    }
    const double mean = s / n;
    const double sd = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - expected_min_uniform(cc)) <= 3.0 * sd);
  }
}

TEST_CASE("property: cournot mean agrees with Monte Carlo") {
  const auto inst = cournot_build(100.0, 1);
  RandomStream rng(2);
  for (int t = 0; t < 20; ++t) {
    const Point x = random_point(rng, inst.n, -1.0, 1.0);
    MonteCarlo mc(inst.n);
    Point h(inst.n);
    for (int s = 0; s < 100000; ++s) {
      for (int i = 0; i < inst.n; ++i) h[i] = rng.uniform(-5.0, 0.0);
      mc.add(cournot_oracle_sample(inst, x, h));
    }
    CHECK((mc.mean() - cournot_mean(inst, x)).norm() <= mc.band());
  }
}

TEST_CASE("property: cournot mean operator is monotone and L_V-Lipschitz") {
  const auto inst = cournot_build(100.0, 3);
  RandomStream rng(3);
  for (int t = 0; t < 10000; ++t) {
    const Point x = random_point(rng, inst.n, -2.0, 10.0);
    const Point y = random_point(rng, inst.n, -2.0, 10.0);
    const Point dv = cournot_mean(inst, x) - cournot_mean(inst, y);
    REQUIRE(dv.dot(x - y) >= -1e-10);
    REQUIRE(dv.norm() <= inst.L_V * (x - y).norm() + 1e-10);
  }
}

TEST_CASE("cournot problem bundle") {
  const auto inst = cournot_build(100.0, 1);
  const auto p = cournot_problem(inst);
  CHECK(p.dim == inst.n);
  CHECK(p.lipschitz == inst.L_V);
  CHECK(*p.strong_monotonicity == doctest::Approx(inst.b_hat.minCoeff() + inst.r));
  RandomStream rng(4);
  const Point x0 = p.initial_point(rng);
  CHECK(x0.minCoeff() >= 0.0);
  CHECK(x0.maxCoeff() <= 1.0);
}

TEST_CASE("cap_build groups and support") {
  const auto inst = cap_build(1);
  CHECK(inst.d == 82);
  REQUIRE(inst.groups.size() == 10);
  for (const auto& g : inst.groups) CHECK(g.size() == 10);
  CHECK(inst.groups[1].front() == 8);  // 1-based 9..18
  CHECK(inst.groups[1].back() == 17);
  CHECK(inst.groups[3].front() == 24);  // group 4 = 25..34
  CHECK(inst.groups[4].back() == 41);   // group 5 = 33..42
  std::set<Index> covered;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    covered.insert(inst.groups[g].begin(), inst.groups[g].end());
    if (g + 1 < inst.groups.size()) {
      int shared = 0;
      for (Index i : inst.groups[g])
        for (Index j : inst.groups[g + 1]) shared += (i == j);
      CHECK(shared == 2);
    }
  }
  CHECK(covered.size() == 82);
  CHECK(*covered.begin() == 0);
  CHECK(*covered.rbegin() == 81);
  for (Index i = 0; i < inst.d; ++i) {
    if (i < 24 || i > 41) CHECK(inst.w_true[i] == 0.0);
  }
  CHECK(inst.w_true.segment(24, 18).norm() > 0.0);
  CHECK(inst.eta == 1e-4);
  CHECK(inst.noise_std == 0.1);
  CHECK(inst.radius == doctest::Approx(10.0 * inst.w_true.norm()));
}

TEST_CASE("cap linear map and adjoint") {
  const auto inst = cap_build(1);
  const Point ones = cap_apply_L(inst, Point::Ones(inst.d));
  CHECK(ones.size() == inst.dual_dim());
  CHECK((ones - Point::Constant(ones.size(), 1e-4)).norm() <= 1e-18);
  CHECK(cap_apply_L(inst, Point::Zero(inst.d)).norm() == 0.0);
  RandomStream rng(5);
  for (int t = 0; t < 1000; ++t) {
    const Point w = gaussian_point(rng, inst.d);
    const Point v = gaussian_point(rng, inst.dual_dim());
    REQUIRE(std::abs(cap_apply_L(inst, w).dot(v) - w.dot(cap_apply_L_adjoint(inst, v))) <= 1e-12);
  }
  CHECK_THROWS_AS(cap_apply_L(inst, Point::Zero(3)), ArgumentError);
}

TEST_CASE("cap oracle sample and mean") {
  const auto inst = cap_build(1);
  RandomStream rng(6);
  const Point a = gaussian_point(rng, inst.d);
  const Point v = gaussian_point(rng, inst.dual_dim());
  Point z(inst.dim());
  z << inst.w_true, v;
  const Point s = cap_oracle_sample(inst, z, a, a.dot(inst.w_true));
  CHECK((s.head(inst.d) - cap_apply_L_adjoint(inst, v)).norm() <= 1e-12);
  Point zero = Point::Zero(inst.dim());
  const Point s0 = cap_oracle_sample(inst, zero, a, 2.0);
  CHECK((s0.head(inst.d) + 2.0 * a).norm() <= 1e-12);
  CHECK(s0.tail(inst.dual_dim()).norm() == 0.0);

  Point zt = Point::Zero(inst.dim());
  zt.head(inst.d) = inst.w_true;
  const Point mt = cap_mean(inst, zt);
  CHECK(mt.head(inst.d).norm() <= 1e-12);
  CHECK((mt.tail(inst.dual_dim()) + cap_apply_L(inst, inst.w_true)).norm() <= 1e-15);
  CHECK((cap_mean(inst, zero).head(inst.d) + inst.w_true).norm() <= 1e-15);
}

TEST_CASE("property: cap mean uses Q = I and q = w_true") {
  const auto inst = cap_build(1);
  const auto prob = cap_problem(inst);
  RandomStream rng(7);
  Point z(inst.dim());
  z << gaussian_point(rng, inst.d), 0.1 * gaussian_point(rng, inst.dual_dim());
  MonteCarlo mc(inst.dim());
  for (int s = 0; s < 1000000; ++s) mc.add(prob.oracle.sample(z, rng));
  CHECK((mc.mean() - cap_mean(inst, z)).norm() <= mc.band());
}

TEST_CASE("property: cap mean operator monotonicity") {
  const auto inst = cap_build(2);
  RandomStream rng(8);
  for (int t = 0; t < 1000; ++t) {
    const Point x = gaussian_point(rng, inst.dim());
    const Point y = gaussian_point(rng, inst.dim());
    const double ip = (cap_mean(inst, x) - cap_mean(inst, y)).dot(x - y);
    const double expect = (x - y).head(inst.d).squaredNorm();
    REQUIRE(std::abs(ip - expect) <= 1e-10 * std::max(1.0, expect));
  }
  CHECK(cap_lipschitz(inst) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("synthetic_build") {
  SUBCASE("identity operator with zero offset") {
    const auto inst = synthetic_build(4, 1.0, 0.0, BoxSet::uniform(4, -1, 1), 1, Point::Zero(4));
    CHECK(inst.solution.norm() <= 1e-12);
  }
  SUBCASE("active upper bounds") {
    const auto inst = synthetic_build(4, 1.0, 0.0, BoxSet::uniform(4, 0, 1), 1, Point::Constant(4, -2.0));
    CHECK((inst.solution - Point::Ones(4)).norm() <= 1e-12);
  }
  SUBCASE("random instances satisfy the build postcondition") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto inst = synthetic_build(10, 0.5, 1.0, BoxSet::uniform(10, -1, 1), seed);
      const auto prob = synthetic_problem(inst, NoiseModel::gaussian(0.0));
      CHECK(residual(prob, inst.solution, 1.0) <= 1e-10);
      const Eigen::MatrixXd sym = inst.op.M + inst.op.M.transpose();
      CHECK((sym - 2 * 0.5 * Eigen::MatrixXd::Identity(10, 10)).norm() <= 1e-12);
    }
  }
  CHECK_THROWS_AS(synthetic_build(3, -1.0, 1.0, BoxSet::uniform(3, -1, 1), 1), ArgumentError);
}
