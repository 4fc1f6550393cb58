#include "trish/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include "trish/errors.hpp"
#include "trish/problems.hpp"

namespace trish {

using nlohmann::json;

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::trish: return "trish";
    case Algorithm::trish1: return "trish1";
    case Algorithm::sg: return "sg";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "trish") return Algorithm::trish;
  if (name == "trish1") return Algorithm::trish1;
  if (name == "sg") return Algorithm::sg;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected trish, trish1 or sg)");
}

namespace {

// Schema helpers. `where` is a JSON-path-like location used in messages.

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  require_object(j, where);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const json& member(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + ": missing required key '" + key + "'");
  return j.at(key);
}

double get_number(const json& j, const std::string& where, const char* key) {
  const json& v = member(j, where, key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + ": must be finite");
  return d;
}

double get_number(const json& j, const std::string& where, const char* key, double fallback) {
  return j.contains(key) ? get_number(j, where, key) : fallback;
}

std::uint64_t get_uint(const json& j, const std::string& where, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(where + "." + key + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

long get_long(const json& j, const std::string& where, const char* key, long fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<long>();
}

std::string get_string(const json& j, const std::string& where, const char* key) {
  const json& v = member(j, where, key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& v, const std::string& where) {
  // Either an explicit array or {"min", "max", "count"} evenly spaced (endpoints included).
  if (v.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(where + "[" + std::to_string(i) + "]: expected a number");
      out.push_back(v[i].get<double>());
    }
    if (out.empty()) throw ConfigError(where + ": must not be empty");
    return out;
  }
  check_keys(v, where, {"min", "max", "count"});
  const double lo = get_number(v, where, "min");
  const double hi = get_number(v, where, "max");
  const long count = get_long(v, where, "count", 0);
  if (count < 1) throw ConfigError(where + ".count: must be >= 1");
  if (hi < lo) throw ConfigError(where + ": max < min");
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(count - 1));
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

ProblemSpec parse_problem(const json& j, const std::filesystem::path& base) {
  const std::string w = "problem";
  require_object(j, w);
  const std::string type = get_string(j, w, "type");
  if (type == "quadratic") {
    check_keys(j, w, {"type", "n", "lambda_min", "lambda_max", "seed"});
    QuadraticSpec s;
    s.n = get_uint(j, w, "n", s.n);
    s.lambda_min = get_number(j, w, "lambda_min", s.lambda_min);
    s.lambda_max = get_number(j, w, "lambda_max", s.lambda_max);
    s.seed = get_uint(j, w, "seed", s.seed);
    return s;
  }
  if (type == "logistic") {
    check_keys(j, w, {"type", "N", "dim", "lambda_reg", "seed"});
    LogisticSpec s;
    s.N = get_uint(j, w, "N", s.N);
    s.dim = get_uint(j, w, "dim", s.dim);
    s.lambda_reg = get_number(j, w, "lambda_reg", s.lambda_reg);
    s.seed = get_uint(j, w, "seed", s.seed);
    return s;
  }
  if (type == "rosenbrock") {
    check_keys(j, w, {"type", "n", "box"});
    RosenbrockSpec s;
    s.n = get_uint(j, w, "n", s.n);
    s.box = get_number(j, w, "box", s.box);
    return s;
  }
  if (type == "quartic") {
    check_keys(j, w, {"type", "n", "lambda_min", "lambda_max", "sigma", "radius", "seed"});
    QuarticSpec s;
    s.n = get_uint(j, w, "n", s.n);
    s.lambda_min = get_number(j, w, "lambda_min", s.lambda_min);
    s.lambda_max = get_number(j, w, "lambda_max", s.lambda_max);
    s.sigma = get_number(j, w, "sigma", s.sigma);
    s.radius = get_number(j, w, "radius", s.radius);
    s.seed = get_uint(j, w, "seed", s.seed);
    return s;
  }
  if (type == "quadratic_csv") {
    check_keys(j, w, {"type", "matrix", "rhs"});
    return QuadraticCsvSpec{resolve(get_string(j, w, "matrix"), base), resolve(get_string(j, w, "rhs"), base)};
  }
  if (type == "logistic_csv") {
    check_keys(j, w, {"type", "train", "validation", "lambda_reg"});
    LogisticCsvSpec s;
    s.train = resolve(get_string(j, w, "train"), base);
    if (j.contains("validation")) s.validation = resolve(get_string(j, w, "validation"), base);
    s.lambda_reg = get_number(j, w, "lambda_reg", 0.0);
    return s;
  }
  throw ConfigError("problem.type: unknown problem '" + type + "'");
}

StepsizeSchedule parse_stepsize(const json& j) {
  const std::string w = "stepsize";
  require_object(j, w);
  const std::string type = get_string(j, w, "type");
  if (type == "constant") {
    check_keys(j, w, {"type", "alpha"});
    return StepsizeSchedule::constant(get_number(j, w, "alpha"));
  }
  if (type == "diminishing") {
    check_keys(j, w, {"type", "a", "b"});
    return StepsizeSchedule::diminishing(get_number(j, w, "a"), get_number(j, w, "b"));
  }
  throw ConfigError("stepsize.type: unknown schedule '" + type + "'");
}

GammaSchedule parse_gammas(const json& j) {
  const std::string w = "gammas";
  require_object(j, w);
  const std::string type = get_string(j, w, "type");
  if (type == "constant") {
    check_keys(j, w, {"type", "gamma1", "gamma2"});
    return GammaSchedule::constant(get_number(j, w, "gamma1"), get_number(j, w, "gamma2"));
  }
  if (type == "merging") {
    check_keys(j, w, {"type", "gamma1", "eta"});
    return GammaSchedule::merging(get_number(j, w, "gamma1"), get_number(j, w, "eta"));
  }
  throw ConfigError("gammas.type: unknown schedule '" + type + "'");
}

SolverConfig parse_solver(const json& j) {
  const std::string w = "solver";
  require_object(j, w);
  const std::string type = get_string(j, w, "type");
  if (type == "steihaug") {
    check_keys(j, w, {"type", "max_iters", "tol"});
    SteihaugSolver s;
    s.max_iters = static_cast<int>(get_long(j, w, "max_iters", s.max_iters));
    s.tol = get_number(j, w, "tol", s.tol);
    return s;
  }
  if (type == "exact") {
    check_keys(j, w, {"type", "tol"});
    ExactSolver s;
    s.tol = get_number(j, w, "tol", s.tol);
    return s;
  }
  throw ConfigError("solver.type: unknown solver '" + type + "'");
}

GradientNoise parse_noise(const json& j) {
  const std::string w = "noise";
  require_object(j, w);
  const std::string type = get_string(j, w, "type");
  if (type == "none") {
    check_keys(j, w, {"type"});
    return NoNoise{};
  }
  if (type == "bounded") {
    check_keys(j, w, {"type", "M_g"});
    return BoundedNoise{get_number(j, w, "M_g")};
  }
  if (type == "stepwise") {
    check_keys(j, w, {"type", "M_g"});
    return StepwiseNoise{get_number(j, w, "M_g")};
  }
  if (type == "geometric") {
    check_keys(j, w, {"type", "M_g", "zeta"});
    return GeometricNoise{get_number(j, w, "M_g"), get_number(j, w, "zeta")};
  }
  if (type == "minibatch") {
    check_keys(j, w, {"type", "batch"});
    return MiniBatchNoise{static_cast<std::size_t>(get_uint(j, w, "batch", 0))};
  }
  throw ConfigError("noise.type: unknown noise kind '" + type + "'");
}

HessianModel parse_hessian(const json& j) {
  const std::string w = "hessian";
  require_object(j, w);
  const std::string type = get_string(j, w, "type");
  if (type == "exact_capped") {
    check_keys(j, w, {"type", "M_H"});
    ExactCappedHessian h;
    h.M_H = get_number(j, w, "M_H", h.M_H);
    return h;
  }
  if (type == "zero") {
    check_keys(j, w, {"type"});
    return ZeroHessian{};
  }
  if (type == "perturbed") {
    check_keys(j, w, {"type", "M_H", "scale"});
    return PerturbedHessian{get_number(j, w, "M_H"), get_number(j, w, "scale")};
  }
  throw ConfigError("hessian.type: unknown Hessian model '" + type + "'");
}

TuningSpec parse_tuning(const json& j) {
  const std::string w = "tuning";
  check_keys(j, w, {"lambdas", "a", "b", "baseline_iterations", "baseline_seed", "G"});
  TuningSpec t;
  t.grid.lambdas = get_number_list(member(j, w, "lambdas"), w + ".lambdas");
  t.grid.a_values = get_number_list(member(j, w, "a"), w + ".a");
  t.grid.b_values = get_number_list(member(j, w, "b"), w + ".b");
  t.baseline_iterations = get_long(j, w, "baseline_iterations", t.baseline_iterations);
  if (t.baseline_iterations < 1) throw ConfigError("tuning.baseline_iterations: must be >= 1");
  t.baseline_seed = get_uint(j, w, "baseline_seed", t.baseline_seed);
  if (j.contains("G")) {
    t.G = get_number(j, w, "G");
    if (!(*t.G > 0.0)) throw ConfigError("tuning.G: must be positive");
  }
  return t;
}

}  // namespace

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  check_keys(doc, "$",
             {"problem", "algorithm", "stepsize", "gammas", "solver", "noise", "hessian", "iterations", "seed", "seeds",
              "initial_point", "output_dir", "stepsize_check", "divergence_threshold", "tuning"});
  ExperimentConfig c;
  c.problem = parse_problem(member(doc, "$", "problem"), base_dir);

  if (doc.contains("algorithm")) {
    const json& a = doc.at("algorithm");
    c.algorithms.clear();
    if (a.is_string()) {
      c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    } else if (a.is_array() && !a.empty()) {
      for (const auto& e : a) {
        if (!e.is_string()) throw ConfigError("algorithm: expected strings");
        c.algorithms.push_back(parse_algorithm(e.get<std::string>()));
      }
    } else {
      throw ConfigError("algorithm: expected a name or a non-empty list of names");
    }
  }
  if (doc.contains("stepsize")) c.trish.stepsizes = parse_stepsize(doc.at("stepsize"));
  if (doc.contains("gammas")) c.trish.gammas = parse_gammas(doc.at("gammas"));
  if (doc.contains("solver")) c.trish.solver = parse_solver(doc.at("solver"));
  if (doc.contains("noise")) c.trish.noise.gradient = parse_noise(doc.at("noise"));
  if (doc.contains("hessian")) c.trish.noise.hessian = parse_hessian(doc.at("hessian"));
  c.trish.iterations = get_long(doc, "$", "iterations", c.trish.iterations);
  c.trish.divergence_threshold = get_number(doc, "$", "divergence_threshold", c.trish.divergence_threshold);
  if (!(c.trish.divergence_threshold > 0.0)) throw ConfigError("divergence_threshold: must be positive");

  if (doc.contains("seed") && doc.contains("seeds")) throw ConfigError("$: give either 'seed' or 'seeds', not both");
  if (doc.contains("seed")) c.seeds = {get_uint(doc, "$", "seed", 0)};
  if (doc.contains("seeds")) {
    const json& s = doc.at("seeds");
    if (!s.is_array() || s.empty()) throw ConfigError("seeds: expected a non-empty array");
    c.seeds.clear();
    for (const auto& e : s) {
      if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0)) {
        throw ConfigError("seeds: expected nonnegative integers");
      }
      c.seeds.push_back(e.get<std::uint64_t>());
    }
  }
  if (doc.contains("initial_point")) {
    const std::vector<double> v = get_number_list(doc.at("initial_point"), "initial_point");
    c.trish.initial_point = Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  if (doc.contains("output_dir")) c.output_dir = get_string(doc, "$", "output_dir");
  if (doc.contains("stepsize_check")) {
    const std::string m = get_string(doc, "$", "stepsize_check");
    if (m == "off") {
      c.stepsize_check = StepsizeCheck::off;
    } else if (m == "advisory") {
      c.stepsize_check = StepsizeCheck::advisory;
    } else if (m == "strict") {
      c.stepsize_check = StepsizeCheck::strict;
    } else {
      throw ConfigError("stepsize_check: expected off, advisory or strict");
    }
  }
  if (doc.contains("tuning")) c.tuning = parse_tuning(doc.at("tuning"));

  try {
    c.trish.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("$: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

std::filesystem::path effective_output_dir(const ExperimentConfig& config) {
  if (const char* env = std::getenv("TRISH_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return config.output_dir;
}

std::unique_ptr<ProblemOracle> make_problem(const ProblemSpec& spec) {
  if (const auto* s = std::get_if<QuadraticSpec>(&spec)) {
    return std::make_unique<QuadraticProblem>(make_quadratic(s->n, s->lambda_min, s->lambda_max, s->seed));
  }
  if (const auto* s = std::get_if<LogisticSpec>(&spec)) {
    return std::make_unique<LogisticProblem>(make_logistic(s->N, s->dim, s->lambda_reg, s->seed));
  }
  if (const auto* s = std::get_if<RosenbrockSpec>(&spec)) return std::make_unique<RosenbrockProblem>(s->n, s->box);
  if (const auto* s = std::get_if<QuarticSpec>(&spec)) {
    const QuadraticProblem q = make_quadratic(s->n, s->lambda_min, s->lambda_max, s->seed);
    return std::make_unique<QuarticProblem>(q.A(), q.b(), s->sigma, s->radius);
  }
  if (const auto* s = std::get_if<QuadraticCsvSpec>(&spec)) {
    return std::make_unique<QuadraticProblem>(load_quadratic_csv(s->matrix, s->rhs));
  }
  const auto& s = std::get<LogisticCsvSpec>(spec);
  return std::make_unique<LogisticProblem>(load_logistic_csv(s.train, s.lambda_reg, s.validation));
}

bool check_config_stepsize(const ExperimentConfig& config, const ProblemOracle& oracle) {
  if (config.stepsize_check == StepsizeCheck::off) return true;
  const double L_g = oracle.constants().L_g;
  const double alpha = stepsize_at(config.trish.stepsizes, 1);
  const Gammas gam = gammas_at(config.trish.gammas, config.trish.stepsizes, 1);
  const Strictness strictness =
      config.stepsize_check == StepsizeCheck::strict ? Strictness::strict : Strictness::advisory;
  bool ok = true;
  for (Algorithm a : config.algorithms) {
    if (a == Algorithm::sg) continue;
    // Certified Hessian-estimate bound: the cap tau L_g, or zero for first-order runs.
    double M_H = 0.0;
    if (a == Algorithm::trish) {
      if (const auto* h = std::get_if<ExactCappedHessian>(&config.trish.noise.hessian)) M_H = std::min(h->M_H, L_g);
      if (const auto* h = std::get_if<PerturbedHessian>(&config.trish.noise.hessian)) M_H = h->M_H;
    }
    StepsizeRule rule = BasicStepsizeRule{};
    if (const auto* m = std::get_if<MergingGammas>(&config.trish.gammas.kind)) rule = MergingStepsizeRule{m->eta};
    ok = check_stepsize(alpha, gam.gamma1, gam.gamma2, L_g, M_H, rule, strictness) && ok;
  }
  return ok;
}

TrishConfig config_for(const ExperimentConfig& config, Algorithm algorithm, std::uint64_t seed) {
  TrishConfig c = config.trish;
  c.seed = seed;
  if (algorithm == Algorithm::trish1) c.noise.hessian = ZeroHessian{};
  return c;
}

Trajectory run_algorithm(const ProblemOracle& oracle, Algorithm algorithm, const TrishConfig& config,
                         const StepObserver& observer) {
  switch (algorithm) {
    case Algorithm::trish: return run_trish(oracle, config, observer);
    case Algorithm::trish1: return run_trish_first_order(oracle, config, observer);
    case Algorithm::sg: {
      SgConfig s;
      s.stepsizes = config.stepsizes;
      s.noise = config.noise;
      s.iterations = config.iterations;
      s.seed = config.seed;
      s.initial_point = config.initial_point;
      s.divergence_threshold = config.divergence_threshold;
      return run_sg(oracle, s);
    }
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace trish
