#pragma once

// Experiment configuration: a single JSON document, validated strictly (unknown keys are errors).

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "trish/core.hpp"
#include "trish/optimizer.hpp"
#include "trish/schedules.hpp"

namespace trish {

enum class Algorithm { trish, trish1, sg };

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);

struct QuadraticSpec {
  std::size_t n = 10;
  double lambda_min = 1.0;
  double lambda_max = 10.0;
  std::uint64_t seed = 0;
};
struct LogisticSpec {
  std::size_t N = 200;
  std::size_t dim = 5;
  double lambda_reg = 0.0;
  std::uint64_t seed = 0;
};
struct RosenbrockSpec {
  std::size_t n = 10;
  double box = 2.0;
};
struct QuarticSpec {
  std::size_t n = 5;
  double lambda_min = 1.0;
  double lambda_max = 4.0;
  double sigma = 0.5;
  double radius = 3.0;
  std::uint64_t seed = 0;
};
struct QuadraticCsvSpec {
  std::filesystem::path matrix;
  std::filesystem::path rhs;
};
struct LogisticCsvSpec {
  std::filesystem::path train;
  std::optional<std::filesystem::path> validation;
  double lambda_reg = 0.0;
};

using ProblemSpec =
    std::variant<QuadraticSpec, LogisticSpec, RosenbrockSpec, QuarticSpec, QuadraticCsvSpec, LogisticCsvSpec>;

std::unique_ptr<ProblemOracle> make_problem(const ProblemSpec& spec);

/// alpha = 10^lambda, gamma1 = 2^a / G, gamma2 = 1 / (2^b G)
struct GridSpec {
  std::vector<double> lambdas;
  std::vector<double> a_values;
  std::vector<double> b_values;
};

struct TuningSpec {
  GridSpec grid;
  long baseline_iterations = 1000;
  std::uint64_t baseline_seed = 0;
  std::optional<double> G;  // skips the baseline run when given
};

enum class StepsizeCheck { off, advisory, strict };

struct ExperimentConfig {
  ProblemSpec problem = QuadraticSpec{};
  std::vector<Algorithm> algorithms{Algorithm::trish};
  TrishConfig trish;  // stepsizes, gammas, solver, noise, K, initial point; seed is per run
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path output_dir = "out";
  StepsizeCheck stepsize_check = StepsizeCheck::advisory;
  std::optional<TuningSpec> tuning;
};

/// Throws ConfigError with a JSON-path style location on any schema violation.
/// Relative data paths are resolved against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Output directory after applying the TRISH_OUTPUT_DIR override.
std::filesystem::path effective_output_dir(const ExperimentConfig& config);

/// Applies the basic (or merging) stepsize precondition to the first iterate, where it is tightest.
/// Returns true when the check passed or was skipped.
bool check_config_stepsize(const ExperimentConfig& config, const ProblemOracle& oracle);

/// TRish configuration for one algorithm and seed (trish1 forces a zero Hessian).
TrishConfig config_for(const ExperimentConfig& config, Algorithm algorithm, std::uint64_t seed);

Trajectory run_algorithm(const ProblemOracle& oracle, Algorithm algorithm, const TrishConfig& config,
                         const StepObserver& observer = {});

}  // namespace trish
