#include <doctest.h>

#include "risfbf/config.hpp"
#include "risfbf/errors.hpp"
#include "risfbf/experiment.hpp"
#include "risfbf/stats.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace risfbf;
namespace fs = std::filesystem;

namespace {

const char* kSynthetic = R"(
[problem]
kind = synthetic
seed = 3
dim = 4
mu = 1.0
skew = 1.0
sigma = 0.0

[solver]
method = risfbf
regime = asymptotic
alpha_mode = increasing
alpha = 0.1
max_iters = 10

[output]
replications = 1

[meta]
seed = 1
)";

const char* kNoisy = R"(
[problem]
kind = synthetic
seed = 5
dim = 6
mu = 0.5
sigma = 0.2

[solver]
method = risfbf
regime = asymptotic
alpha_mode = increasing
alpha = 0.2
batch = polynomial
max_iters = 60

[output]
replications = 6
stride = 5
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(RISFBF_TEST_DATA_DIR) / "harness" / name;
  fs::remove_all(p);
  return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

// CSV body with the trailing wall-time column removed.
std::string body_without_time(const fs::path& p) {
  std::string out;
  for (const auto& l : read_lines(p)) out += l.substr(0, l.rfind(',')) + "\n";
  return out;
}

double col(const std::string& line, int idx) {
  std::stringstream ss(line);
  std::string cell;
  for (int i = 0; i <= idx; ++i) std::getline(ss, cell, ',');
  return std::stod(cell);
}

}  // namespace

TEST_CASE("parse_config reads sections and rejects unknown keys") {
  const auto cfg = parse_config(kSynthetic);
  CHECK(cfg.problem.kind == "synthetic");
  CHECK(cfg.problem.dim == 4);
  CHECK(cfg.solver.method == Method::risfbf);
  CHECK(cfg.solver.policy.regime == Regime::asymptotic);
  CHECK(cfg.solver.policy.alpha.kind == AlphaMode::Kind::increasing);
  CHECK(cfg.solver.stop.max_iters == 10);
  CHECK(cfg.seed == 1);
  CHECK(cfg.label() == "risfbf");

  CHECK_THROWS_AS(parse_config(std::string(kSynthetic) + "\n[extra]\nx = 1\n"), ConfigError);
  std::string typo = kSynthetic;
  typo.replace(typo.find("max_iters"), 9, "max_iter");
  CHECK_THROWS_AS(parse_config(typo), ConfigError);
  std::string wrong_kind_key = kSynthetic;
  wrong_kind_key.replace(wrong_kind_key.find("dim = 4"), 7, "lv_target = 100");
  CHECK_THROWS_AS(parse_config(wrong_kind_key), ConfigError);
  std::string bad_value = kSynthetic;
  bad_value.replace(bad_value.find("max_iters = 10"), 14, "max_iters = ten");
  CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), ConfigError);
}

TEST_CASE("confidence_interval") {
  const std::vector<double> c = {2.0, 2.0, 2.0};
  const auto [lo, hi] = confidence_interval(c, 0.95);
  CHECK(lo == 2.0);
  CHECK(hi == 2.0);
  const std::vector<double> xs = {1.0, 2.0, 4.0, 7.0, 3.0};
  const auto i90 = confidence_interval(xs, 0.90);
  const auto i99 = confidence_interval(xs, 0.99);
  CHECK(0.5 * (i90.first + i90.second) == doctest::Approx(sample_mean(xs)));
  CHECK(i99.first <= i90.first);
  CHECK(i99.second >= i90.second);
  // t_{0.975, 4} = 2.776445.
  const auto i95 = confidence_interval(xs, 0.95);
  CHECK(i95.second - sample_mean(xs) == doctest::Approx(2.776445 * standard_error(xs)).epsilon(1e-6));
  CHECK_THROWS_AS(confidence_interval({1.0}, 0.95), ArgumentError);
  CHECK(ls_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
}

TEST_CASE("run_experiment: zero-noise synthetic writes a 10-row trajectory") {
  const auto dir = scratch("single");
  RunOptions opts;
  opts.out_dir = dir.string();
  const auto rep = run_experiment(parse_config(kSynthetic), opts);
  CHECK(rep.failed == 0);
  const auto lines = read_lines(dir / "risfbf_rep000.csv");
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "k,oracle_calls,residual,rel_error,gap,H_k,wall_time_s");
  for (std::size_t i = 6; i < lines.size(); ++i) CHECK(col(lines[i], 2) <= col(lines[i - 1], 2) + 1e-15);
  CHECK(fs::exists(dir / "risfbf_summary.csv"));
  CHECK(fs::exists(dir / "risfbf_replications.csv"));
  // One replication: no interval, but the mean is still reported.
  const auto* m = rep.metric("residual");
  REQUIRE(m != nullptr);
  CHECK(m->n == 1);
}

TEST_CASE("run_experiment: determinism, worker independence and summary means") {
  const auto cfg = parse_config(kNoisy);
  const auto d1 = scratch("det1");
  const auto d2 = scratch("det2");
  RunOptions o1;
  o1.out_dir = d1.string();
  o1.workers = 1;
  RunOptions o2 = o1;
  o2.out_dir = d2.string();
  o2.workers = 3;
  const auto r1 = run_experiment(cfg, o1);
  const auto r2 = run_experiment(cfg, o2);
  for (int r = 0; r < 6; ++r) {
    char name[32];
    std::snprintf(name, sizeof name, "risfbf_rep%03d.csv", r);
    CHECK(body_without_time(d1 / name) == body_without_time(d2 / name));
  }
  double sum = 0.0;
  for (const auto& o : r1.replications) sum += o.residual;
  const auto* m = r1.metric("residual");
  REQUIRE(m != nullptr);
  CHECK(m->n == 6);
  CHECK(m->mean == doctest::Approx(sum / 6.0).epsilon(1e-12));
  CHECK(m->ci_lower <= m->mean);
  CHECK(m->mean <= m->ci_upper);
  const auto summary = read_lines(d1 / "risfbf_summary.csv");
  CHECK(summary[0] == "metric,n,failed,mean,std_error,ci_lower,ci_upper");
  CHECK(col(summary[1], 3) == doctest::Approx(sum / 6.0).epsilon(1e-12));
  CHECK(r2.metric("residual")->mean == m->mean);
}

TEST_CASE("compare: reduction rows coincide and problems must match") {
  auto a = parse_config(kNoisy);
  a.solver.policy.regime = Regime::custom;
  a.solver.policy.alpha = AlphaMode::constant(0.0);
  a.solver.policy.rho = 1.0;
  auto b = a;
  b.solver.method = Method::sfbf;
  const auto dir = scratch("compare");
  RunOptions opts;
  opts.out_dir = dir.string();
  const auto reps = compare({a, b}, opts);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].metric("residual")->mean == reps[1].metric("residual")->mean);
  CHECK(body_without_time(dir / "compare_risfbf.csv") == body_without_time(dir / "compare_sfbf.csv"));
  CHECK(format_table(reps).find("sfbf") != std::string::npos);
  CHECK_THROWS_AS(compare({}, opts), ArgumentError);
  auto c = b;
  c.problem.seed = 99;
  CHECK_THROWS_AS(compare({a, c}, opts), ArgumentError);
}

TEST_CASE("I/O failures and strict mode") {
  const auto blocker = scratch("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker.string()) << "file";
  RunOptions opts;
  opts.out_dir = (blocker / "sub").string();
  CHECK_THROWS_AS(run_experiment(parse_config(kSynthetic), opts), IoError);

  auto cfg = parse_config(kSynthetic);
  cfg.solver.policy.lambda = 10.0;
  RunOptions strict;
  strict.write_files = false;
  strict.strict = true;
  CHECK_THROWS_AS(run_experiment(cfg, strict), PolicyViolation);
  strict.strict = false;
  CHECK(!run_experiment(cfg, strict).warnings.empty());
}
