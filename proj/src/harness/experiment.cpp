#include "risfbf/experiment.hpp"

#include "risfbf/errors.hpp"
#include "risfbf/merit.hpp"
#include "risfbf/stats.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace risfbf {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : ""; }

std::string short_num(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

MetricSummary summarize(const std::string& name, const std::vector<double>& xs, double level, bool with_ci) {
  MetricSummary m;
  m.name = name;
  m.n = static_cast<int>(xs.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  m.mean = xs.empty() ? nan : sample_mean(xs);
  m.std_error = m.ci_lower = m.ci_upper = nan;
  if (with_ci && xs.size() >= 2) {
    m.std_error = standard_error(xs);
    auto ci = confidence_interval(xs, level);
    m.ci_lower = ci.first;
    m.ci_upper = ci.second;
  }
  return m;
}

std::string rep_name(const std::string& label, int r) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", r);
  return label + "_rep" + buf + ".csv";
}

}  // namespace

const MetricSummary* RunReport::metric(const std::string& name) const {
  for (const auto& m : metrics)
    if (m.name == name) return &m;
  return nullptr;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "k,oracle_calls,residual,rel_error,gap,H_k,wall_time_s\n";
  for (const auto& r : traj.records) {
    out << r.k << ',' << r.oracle_calls << ',' << num(r.residual) << ',' << opt(r.rel_error) << ','
        << opt(r.gap) << ',' << opt(r.energy_h) << ',' << num(r.wall_time_s) << '\n';
  }
  close_out(out, path);
}

RunReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  const int reps = opts.replications.value_or(cfg.output.replications);
  const int workers = std::max(1, opts.workers.value_or(cfg.output.workers));
  if (reps < 1) throw ConfigError("replications must be >= 1");

  const ProblemInstance prob = build_problem(cfg.problem);
  SolverConfig sc = build_solver_config(cfg, prob);
  sc.strict = opts.strict;

  RunReport report;
  report.label = cfg.label();
  if (sc.method == Method::risfbf || sc.method == Method::proxpoint) {
    report.warnings = validate(sc.policy, prob.lipschitz, prob.strong_monotonicity);
    if (opts.strict && !report.warnings.empty()) {
      std::string msg = "policy violations:";
      for (const auto& w : report.warnings) msg += " " + w + ";";
      throw PolicyViolation(msg);
    }
  }

  report.replications.resize(static_cast<std::size_t>(reps));
  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<int> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mu;

  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= reps) return;
      ReplicationOutcome& o = report.replications[static_cast<std::size_t>(r)];
      o.index = r;
      const auto rt0 = std::chrono::steady_clock::now();
      try {
        RunResult res = run(prob, sc, RandomStream(seed, static_cast<std::uint64_t>(r)));
        o.ok = true;
        o.iterations = res.iterations;
        o.oracle_calls = res.oracle_calls;
        const double lam = sc.residual_lambda.value_or(
            (sc.method == Method::risfbf || sc.method == Method::proxpoint)
                ? default_lambda(sc.policy, prob.lipschitz, prob.strong_monotonicity)
                : sc.policy.lambda.value_or(1.0 / (4.0 * prob.lipschitz)));
        if (prob.oracle.has_mean()) {
          o.residual = residual(prob, res.final_x, lam);
        } else {
          RandomStream ev(seed, 1000000ULL + static_cast<std::uint64_t>(r));
          o.residual = residual_estimated(prob, res.final_x, lam, ev);
        }
        if (prob.truth) {
          o.rel_error = relative_error(res.final_x.segment(prob.truth->offset, prob.truth->values.size()),
                                       prob.truth->values);
        }
        if (res.gap_region) o.gap = dual_gap_affine(prob, res.averaged_x, *res.gap_region);
        o.trajectory = std::move(res.trajectory);
      } catch (const NumericFailure& e) {
        o.ok = false;
        o.error = e.what();
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        next.store(reps);
      }
      o.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - rt0).count();
    }
  };

  if (workers == 1 || reps == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, reps); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<double> resid, rel, gap, iters, calls, wall;
  for (const auto& o : report.replications) {
    if (!o.ok) {
      ++report.failed;
      continue;
    }
    resid.push_back(o.residual);
    if (o.rel_error) rel.push_back(*o.rel_error);
    if (o.gap) gap.push_back(*o.gap);
    iters.push_back(static_cast<double>(o.iterations));
    calls.push_back(static_cast<double>(o.oracle_calls));
    wall.push_back(o.wall_time_s);
  }
  const double level = cfg.output.confidence;
  report.metrics.push_back(summarize("residual", resid, level, true));
  if (!rel.empty()) report.metrics.push_back(summarize("rel_error", rel, level, true));
  if (!gap.empty()) report.metrics.push_back(summarize("gap", gap, level, true));
  report.metrics.push_back(summarize("iterations", iters, level, true));
  report.metrics.push_back(summarize("oracle_calls", calls, level, true));
  report.metrics.push_back(summarize("wall_time_s", wall, level, cfg.output.time_ci));

  if (opts.write_files) {
    const fs::path dir = opts.out_dir.value_or(cfg.output.dir);
    ensure_dir(dir);
    for (const auto& o : report.replications) {
      if (o.ok) write_trajectory_csv((dir / rep_name(report.label, o.index)).string(), o.trajectory);
    }
    {
      const fs::path p = dir / (report.label + "_summary.csv");
      auto out = open_out(p);
      out << "metric,n,failed,mean,std_error,ci_lower,ci_upper\n";
      for (const auto& m : report.metrics) {
        out << m.name << ',' << m.n << ',' << report.failed << ',' << num(m.mean) << ',' << num(m.std_error)
            << ',' << num(m.ci_lower) << ',' << num(m.ci_upper) << '\n';
      }
      close_out(out, p);
    }
    {
      const fs::path p = dir / (report.label + "_replications.csv");
      auto out = open_out(p);
      out << "replication,status,iterations,oracle_calls,residual,rel_error,gap,wall_time_s\n";
      for (const auto& o : report.replications) {
        out << o.index << ',' << (o.ok ? "ok" : "failed") << ',' << o.iterations << ',' << o.oracle_calls << ','
            << (o.ok ? num(o.residual) : "") << ',' << opt(o.rel_error) << ',' << opt(o.gap) << ','
            << num(o.wall_time_s) << '\n';
      }
      close_out(out, p);
    }
  }
  return report;
}

std::vector<RunReport> compare(const std::vector<ExperimentConfig>& cfgs, const RunOptions& opts) {
  if (cfgs.empty()) throw ArgumentError("compare: no configurations given");
  const std::string canon = cfgs.front().problem.canonical();
  for (const auto& c : cfgs) {
    if (c.problem.canonical() != canon) {
      throw ArgumentError("compare: mismatched problems (" + canon + " vs " + c.problem.canonical() + ")");
    }
  }
  std::vector<RunReport> out;
  std::set<std::string> used;
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    ExperimentConfig c = cfgs[i];
    std::string label = c.label();
    if (used.count(label)) label += "_" + std::to_string(i);
    used.insert(label);
    c.output.name = label;
    out.push_back(run_experiment(c, opts));
  }
  if (opts.write_files) {
    const fs::path dir = opts.out_dir.value_or(cfgs.front().output.dir);
    ensure_dir(dir);
    for (const auto& rep : out) {
      std::vector<const Trajectory*> ok;
      for (const auto& o : rep.replications)
        if (o.ok) ok.push_back(&o.trajectory);
      std::size_t len = ok.empty() ? 0 : std::numeric_limits<std::size_t>::max();
      for (const auto* t : ok) len = std::min(len, t->records.size());
      const fs::path p = dir / ("compare_" + rep.label + ".csv");
      auto f = open_out(p);
      f << "k,oracle_calls,mean_residual,mean_rel_error,mean_gap\n";
      for (std::size_t j = 0; j < len; ++j) {
        double r = 0.0, e = 0.0, g = 0.0;
        bool has_e = true, has_g = true;
        for (const auto* t : ok) {
          const auto& rec = t->records[j];
          r += rec.residual;
          if (rec.rel_error) e += *rec.rel_error; else has_e = false;
          if (rec.gap) g += *rec.gap; else has_g = false;
        }
        const double n = static_cast<double>(ok.size());
        const auto& head = ok.front()->records[j];
        f << head.k << ',' << head.oracle_calls << ',' << num(r / n) << ',' << (has_e ? num(e / n) : "") << ','
          << (has_g ? num(g / n) : "") << '\n';
      }
      close_out(f, p);
    }
  }
  return out;
}

std::string format_table(const std::vector<RunReport>& reports) {
  std::ostringstream os;
  char line[512];
  int w = 14;
  for (const auto& r : reports) w = std::max(w, static_cast<int>(r.label.size()));
  std::snprintf(line, sizeof line, "%-*s %5s %6s %11s %25s %11s %11s %12s %9s\n", w, "method", "runs", "failed",
                "residual", "CI", "rel_error", "gap", "oracle_calls", "time_s");
  os << line;
  for (const auto& r : reports) {
    const auto* res = r.metric("residual");
    const auto* rel = r.metric("rel_error");
    const auto* gap = r.metric("gap");
    const auto* calls = r.metric("oracle_calls");
    const auto* wall = r.metric("wall_time_s");
    const std::string ci = "[" + short_num(res->ci_lower) + ", " + short_num(res->ci_upper) + "]";
    std::snprintf(line, sizeof line, "%-*s %5d %6d %11s %25s %11s %11s %12.0f %9.3f\n", w, r.label.c_str(),
                  static_cast<int>(r.replications.size()), r.failed, short_num(res->mean).c_str(), ci.c_str(),
                  rel ? short_num(rel->mean).c_str() : "-", gap ? short_num(gap->mean).c_str() : "-",
                  calls && calls->n ? calls->mean : 0.0, wall && wall->n ? wall->mean : 0.0);
    os << line;
  }
  return os.str();
}

}  // namespace risfbf
