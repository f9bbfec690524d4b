#pragma once

#include "risfbf/config.hpp"
#include "risfbf/solvers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace risfbf {

struct ReplicationOutcome {
  int index = 0;
  bool ok = false;
  std::string error;
  long iterations = 0;
  long oracle_calls = 0;
  double residual = 0.0;
  std::optional<double> rel_error;
  std::optional<double> gap;
  double wall_time_s = 0.0;
  Trajectory trajectory;
};

struct MetricSummary {
  std::string name;
  int n = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
};

struct RunReport {
  std::string label;
  std::vector<ReplicationOutcome> replications;
  std::vector<MetricSummary> metrics;
  std::vector<std::string> warnings;
  int failed = 0;
  double wall_seconds = 0.0;

  const MetricSummary* metric(const std::string& name) const;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  bool strict = false;
  bool write_files = true;
};

RunReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});
std::vector<RunReport> compare(const std::vector<ExperimentConfig>& cfgs, const RunOptions& opts = {});
std::string format_table(const std::vector<RunReport>& reports);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace risfbf
