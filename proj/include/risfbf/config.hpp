#pragma once

#include "risfbf/policy.hpp"
#include "risfbf/problem.hpp"
#include "risfbf/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace risfbf {

struct ProblemSection {
  std::string kind = "synthetic";
  std::uint64_t seed = 1;
  std::optional<double> box_lower;
  std::optional<double> box_upper;
  // synthetic
  long dim = 20;
  double mu = 1.0;
  double skew = 1.0;
  std::string noise = "gaussian";
  double sigma = 0.1;
  double bias = 0.0;
  // cournot
  double lv_target = 100.0;
  int firms = 10;
  double slope = 0.1;
  double intercept = 1.0;
  // cap
  int groups = 10;
  int group_size = 10;
  int overlap = 2;
  double eta = 1e-4;
  double noise_std = 0.1;
  std::optional<double> radius;

  // Canonical text of the fields relevant to `kind`; equal strings mean equal instances.
  std::string canonical() const;
};

struct SolverSection {
  Method method = Method::risfbf;
  RegimePolicy policy;
  BatchSchedule batch = BatchSchedule::constant(1);
  StopRule stop;
  std::optional<double> residual_lambda;
  bool gap = false;
  std::optional<double> gap_radius;
};

struct OutputSection {
  std::string dir = "out";
  std::string name;  // file prefix, defaults to the method name
  long stride = 1;
  int replications = 1;
  double confidence = 0.95;
  int workers = 1;
  bool time_ci = false;
};

struct ExperimentConfig {
  ProblemSection problem;
  SolverSection solver;
  OutputSection output;
  std::uint64_t seed = 1;

  std::string label() const;
};

// INI text with sections [problem] [solver] [output] [meta]. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

ProblemInstance build_problem(const ProblemSection& section);
SolverConfig build_solver_config(const ExperimentConfig& cfg, const ProblemInstance& prob);

}  // namespace risfbf
