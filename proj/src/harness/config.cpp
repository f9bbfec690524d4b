#include "risfbf/config.hpp"

#include "risfbf/errors.hpp"
#include "risfbf/problems.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace risfbf {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kProblemCommon = {"kind", "seed"};
const std::set<std::string> kProblemSynthetic = {"dim", "mu", "skew", "noise", "sigma", "bias",
                                                 "box_lower", "box_upper"};
const std::set<std::string> kProblemCournot = {"lv_target", "firms", "slope", "intercept",
                                               "box_lower", "box_upper"};
const std::set<std::string> kProblemCap = {"groups", "group_size", "overlap", "eta", "noise_std", "radius"};
const std::set<std::string> kSolver = {
    "method", "regime", "alpha_mode", "alpha", "alpha_bar", "eps_bar", "nu", "a", "b", "lambda", "rho",
    "batch", "batch_m", "batch_theta", "batch_p", "batch_scale", "max_iters", "max_oracle_calls",
    "residual_tol", "residual_lambda", "gap", "gap_radius"};
const std::set<std::string> kOutput = {"dir", "name", "stride", "replications", "confidence", "workers", "time_ci"};
const std::set<std::string> kMeta = {"seed"};

std::string where(const std::string& sec, const std::string& key) { return "[" + sec + "] " + key; }

double to_double(const std::string& sec, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(where(sec, key) + ": not a number: '" + v + "'");
  return out;
}

long to_long(const std::string& sec, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(where(sec, key) + ": not an integer: '" + v + "'");
  return out;
}

std::uint64_t to_u64(const std::string& sec, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || v[0] == '-') {
    throw ConfigError(where(sec, key) + ": not a non-negative integer: '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& sec, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(where(sec, key) + ": not a boolean: '" + v + "'");
}

class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  void check_keys(const std::set<std::string>& allowed) const {
    if (!tree_) return;
    for (const auto& kv : *tree_) {
      if (!allowed.count(kv.first)) throw ConfigError("unknown key " + where(name_, kv.first));
    }
  }

  std::optional<std::string> str(const std::string& key) const {
    if (!tree_) return std::nullopt;
    auto it = tree_->find(key);
    if (it == tree_->not_found()) return std::nullopt;
    return it->second.data();
  }
  std::optional<double> num(const std::string& key) const {
    auto s = str(key);
    if (!s) return std::nullopt;
    return to_double(name_, key, *s);
  }
  std::optional<long> integer(const std::string& key) const {
    auto s = str(key);
    if (!s) return std::nullopt;
    return to_long(name_, key, *s);
  }
  std::optional<std::uint64_t> u64(const std::string& key) const {
    auto s = str(key);
    if (!s) return std::nullopt;
    return to_u64(name_, key, *s);
  }
  std::optional<bool> flag(const std::string& key) const {
    auto s = str(key);
    if (!s) return std::nullopt;
    return to_bool(name_, key, *s);
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
};

template <class T>
void assign(T& dst, const std::optional<T>& v) {
  if (v) dst = *v;
}

}  // namespace

std::string ProblemSection::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "kind=" << kind << ";seed=" << seed;
  if (kind == "synthetic") {
    os << ";dim=" << dim << ";mu=" << mu << ";skew=" << skew << ";noise=" << noise << ";sigma=" << sigma
       << ";bias=" << bias << ";box=" << box_lower.value_or(-1.0) << "," << box_upper.value_or(1.0);
  } else if (kind == "cournot") {
    os << ";lv=" << lv_target << ";firms=" << firms << ";slope=" << slope << ";intercept=" << intercept
       << ";box=" << box_lower.value_or(0.0) << "," << box_upper.value_or(10.0);
  } else {
    os << ";groups=" << groups << ";group_size=" << group_size << ";overlap=" << overlap << ";eta=" << eta
       << ";noise_std=" << noise_std << ";radius=" << (radius ? std::to_string(*radius) : "default");
  }
  return os.str();
}

std::string ExperimentConfig::label() const {
  return output.name.empty() ? std::string(method_name(solver.method)) : output.name;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& kv : tree) {
    if (kv.second.empty() && !kv.second.data().empty()) {
      throw ConfigError("key '" + kv.first + "' outside of any section");
    }
    if (kv.first != "problem" && kv.first != "solver" && kv.first != "output" && kv.first != "meta") {
      throw ConfigError("unknown section [" + kv.first + "]");
    }
  }
  auto child = [&](const std::string& name) -> const pt::ptree* {
    auto it = tree.find(name);
    return it == tree.not_found() ? nullptr : &it->second;
  };

  ExperimentConfig cfg;
  try {
    // ---- problem
    Section prob("problem", child("problem"));
    ProblemSection& P = cfg.problem;
    assign(P.kind, prob.str("kind"));
    std::set<std::string> allowed = kProblemCommon;
    if (P.kind == "synthetic") {
      allowed.insert(kProblemSynthetic.begin(), kProblemSynthetic.end());
    } else if (P.kind == "cournot") {
      allowed.insert(kProblemCournot.begin(), kProblemCournot.end());
    } else if (P.kind == "cap") {
      allowed.insert(kProblemCap.begin(), kProblemCap.end());
    } else {
      throw ConfigError("[problem] kind: unknown problem '" + P.kind + "'");
    }
    prob.check_keys(allowed);
    assign(P.seed, prob.u64("seed"));
    P.box_lower = prob.num("box_lower");
    P.box_upper = prob.num("box_upper");
    assign(P.dim, prob.integer("dim"));
    assign(P.mu, prob.num("mu"));
    assign(P.skew, prob.num("skew"));
    assign(P.noise, prob.str("noise"));
    assign(P.sigma, prob.num("sigma"));
    assign(P.bias, prob.num("bias"));
    assign(P.lv_target, prob.num("lv_target"));
    if (auto v = prob.integer("firms")) P.firms = static_cast<int>(*v);
    assign(P.slope, prob.num("slope"));
    assign(P.intercept, prob.num("intercept"));
    if (auto v = prob.integer("groups")) P.groups = static_cast<int>(*v);
    if (auto v = prob.integer("group_size")) P.group_size = static_cast<int>(*v);
    if (auto v = prob.integer("overlap")) P.overlap = static_cast<int>(*v);
    assign(P.eta, prob.num("eta"));
    assign(P.noise_std, prob.num("noise_std"));
    P.radius = prob.num("radius");
    if (P.noise != "gaussian" && P.noise != "uniform" && P.noise != "biased") {
      throw ConfigError("[problem] noise: expected gaussian, uniform or biased");
    }

    // ---- solver
    Section sol("solver", child("solver"));
    sol.check_keys(kSolver);
    SolverSection& S = cfg.solver;
    if (auto m = sol.str("method")) S.method = parse_method(*m);
    RegimePolicy& pol = S.policy;
    if (auto r = sol.str("regime")) pol.regime = parse_regime(*r);
    const std::string amode = sol.str("alpha_mode").value_or("constant");
    const double alpha = sol.num("alpha").value_or(0.0);
    if (amode == "constant") {
      pol.alpha = AlphaMode::constant(alpha);
    } else if (amode == "increasing") {
      pol.alpha = AlphaMode::increasing(alpha);
    } else {
      throw ConfigError("[solver] alpha_mode: expected constant or increasing");
    }
    pol.alpha_bar = sol.num("alpha_bar");
    assign(pol.eps_bar, sol.num("eps_bar"));
    assign(pol.nu, sol.num("nu"));
    assign(pol.a, sol.num("a"));
    assign(pol.b, sol.num("b"));
    pol.lambda = sol.num("lambda");
    pol.rho = sol.num("rho");

    const std::string batch = sol.str("batch").value_or("constant");
    if (batch == "constant") {
      S.batch = BatchSchedule::constant(sol.integer("batch_m").value_or(1));
    } else if (batch == "polynomial") {
      S.batch = BatchSchedule::polynomial(sol.num("batch_theta").value_or(1.01));
    } else if (batch == "geometric") {
      S.batch = BatchSchedule::geometric(sol.num("batch_p").value_or(1.0 / 1.01));
    } else if (batch == "scaled_polynomial") {
      S.batch = BatchSchedule::scaled_polynomial(sol.num("batch_theta").value_or(1.1),
                                                 sol.num("batch_scale").value_or(1.0));
    } else {
      throw ConfigError("[solver] batch: unknown schedule '" + batch + "'");
    }
    assign(S.stop.max_iters, sol.integer("max_iters"));
    assign(S.stop.max_oracle_calls, sol.integer("max_oracle_calls"));
    assign(S.stop.residual_tol, sol.num("residual_tol"));
    S.residual_lambda = sol.num("residual_lambda");
    assign(S.gap, sol.flag("gap"));
    S.gap_radius = sol.num("gap_radius");
    if (S.stop.max_iters < 0 || S.stop.max_oracle_calls < 0) throw ConfigError("[solver] budgets must be positive");
    if (S.stop.max_iters == 0 && S.stop.max_oracle_calls == 0) {
      throw ConfigError("[solver] set max_iters or max_oracle_calls");
    }

    // ---- output
    Section out("output", child("output"));
    out.check_keys(kOutput);
    OutputSection& O = cfg.output;
    assign(O.dir, out.str("dir"));
    assign(O.name, out.str("name"));
    assign(O.stride, out.integer("stride"));
    if (auto v = out.integer("replications")) O.replications = static_cast<int>(*v);
    assign(O.confidence, out.num("confidence"));
    if (auto v = out.integer("workers")) O.workers = static_cast<int>(*v);
    assign(O.time_ci, out.flag("time_ci"));
    if (O.replications < 1) throw ConfigError("[output] replications must be >= 1");
    if (!(O.confidence > 0.0 && O.confidence < 1.0)) throw ConfigError("[output] confidence must lie in (0,1)");
    if (O.stride < 1) throw ConfigError("[output] stride must be >= 1");
    if (O.workers < 1) throw ConfigError("[output] workers must be >= 1");

    // ---- meta
    Section meta("meta", child("meta"));
    meta.check_keys(kMeta);
    assign(cfg.seed, meta.u64("seed"));
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ProblemInstance build_problem(const ProblemSection& P) {
  try {
    if (P.kind == "synthetic") {
      if (P.dim < 1) throw ConfigError("[problem] dim must be >= 1");
      const BoxSet box = BoxSet::uniform(P.dim, P.box_lower.value_or(-1.0), P.box_upper.value_or(1.0));
      const auto inst = synthetic_build(P.dim, P.mu, P.skew, box, P.seed);
      NoiseModel noise = NoiseModel::gaussian(P.sigma);
      if (P.noise == "uniform") noise = NoiseModel::uniform(P.sigma);
      if (P.noise == "biased") noise = NoiseModel::biased(P.sigma, P.bias);
      return synthetic_problem(inst, noise);
    }
    if (P.kind == "cournot") {
      CournotParams cp;
      cp.firms = P.firms;
      cp.slope = P.slope;
      cp.intercept = P.intercept;
      cp.box_lower = P.box_lower.value_or(0.0);
      cp.box_upper = P.box_upper.value_or(10.0);
      return cournot_problem(cournot_build(P.lv_target, P.seed, cp));
    }
    if (P.kind == "cap") {
      CapParams cp;
      cp.groups = P.groups;
      cp.group_size = P.group_size;
      cp.overlap = P.overlap;
      cp.eta = P.eta;
      cp.noise_std = P.noise_std;
      cp.radius = P.radius;
      return cap_problem(cap_build(P.seed, cp));
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("[problem] ") + e.what());
  }
  throw ConfigError("[problem] kind: unknown problem '" + P.kind + "'");
}

SolverConfig build_solver_config(const ExperimentConfig& cfg, const ProblemInstance& prob) {
  SolverConfig sc;
  sc.method = cfg.solver.method;
  sc.policy = cfg.solver.policy;
  sc.batch = cfg.solver.batch;
  sc.stop = cfg.solver.stop;
  sc.record_stride = cfg.output.stride;
  sc.residual_lambda = cfg.solver.residual_lambda;
  if (cfg.solver.gap) {
    if (!prob.affine) throw ConfigError("[solver] gap: only available for affine (synthetic) problems");
    GapSettings g;
    g.radius = cfg.solver.gap_radius;
    sc.gap = g;
  }
  return sc;
}

}  // namespace risfbf
