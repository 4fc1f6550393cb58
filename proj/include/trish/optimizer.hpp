#pragma once

// TRish main loop (second-order, first-order special case) and the SG baseline.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trish/core.hpp"
#include "trish/schedules.hpp"
#include "trish/subproblem.hpp"

namespace trish {

struct SteihaugSolver {
  int max_iters = 3;
  double tol = 1e-10;
};
struct ExactSolver {
  double tol = 1e-12;
};
using SolverConfig = std::variant<SteihaugSolver, ExactSolver>;

struct TrishConfig {
  StepsizeSchedule stepsizes = StepsizeSchedule::constant(0.1);
  GammaSchedule gammas = GammaSchedule::constant(1.0, 1.0);
  SolverConfig solver = SteihaugSolver{};
  NoiseModel noise;
  long iterations = 100;  // K
  std::uint64_t seed = 0;
  std::optional<Vector> initial_point;  // problem default when absent
  /// Abort once f(x_k) exceeds f(x_1) by this much.
  double divergence_threshold = 1e12;

  void validate() const;
};

/// One row per iterate; row k describes x after k steps and the step that produced it.
/// Row 0 is the initial point and carries no step fields (NaN / nullopt).
struct IterationRecord {
  long k = 0;
  double f = 0.0;
  double grad_norm_true = 0.0;  // diagnostic only, not part of the cost
  double g_norm = std::nan("");
  double delta = std::nan("");
  int case_tag = 0;  // 0 when not applicable
  double model_decrease = std::nan("");
  double cauchy_decrease = std::nan("");
  double cauchy_bound = std::nan("");  // 0.5 |g| min{delta, |g|/B}
  int cg_iterations = 0;
  std::optional<double> upsilon;
  long cost_units = 0;  // cumulative: 1 per stochastic gradient, 1 per Hessian-vector product
  std::int64_t wall_ns = 0;
  double alpha = std::nan("");
  double gamma1 = std::nan("");
  double gamma2 = std::nan("");
  double step_norm = std::nan("");
  double hessian_bound = std::nan("");
};

enum class RunStatus { completed, diverged, non_finite };

std::string_view to_string(RunStatus status) noexcept;

struct Trajectory {
  std::string algorithm;  // "trish", "trish1" or "sg"
  std::uint64_t seed = 0;
  std::string config_echo;
  std::vector<IterationRecord> records;
  Vector final_point;
  RunStatus status = RunStatus::completed;
  std::string message;

  bool ok() const noexcept { return status == RunStatus::completed; }
};

struct StepDiagnostics {
  TRStep step;
  bool zero_gradient = false;
  int hessian_products = 0;  // products charged to the cost account
};

/// Radius from the gradient norm, step from the chosen solver, x' = x + s.
/// g = 0 gives s = 0 and x' = x.
Vector trish_step(const Vector& x, const Vector& g, const HessianEstimate& h, double alpha, double gamma1,
                  double gamma2, const SolverConfig& solver, StepDiagnostics* diagnostics = nullptr);

/// Everything an observer needs to re-check per-step inequalities.
struct StepEvent {
  long k;                   // 1-based iteration index
  const Vector& x;          // x_k
  const Vector& x_next;     // x_{k+1}
  const Vector& g;          // g_k
  const Vector& true_grad;  // grad f(x_k)
  const HessianEstimate& h;
  const StepDiagnostics& diagnostics;
  double f;       // f(x_k)
  double f_next;  // f(x_{k+1})
  double alpha, gamma1, gamma2;
};

using StepObserver = std::function<void(const StepEvent&)>;

Trajectory run_trish(const ProblemOracle& oracle, const TrishConfig& config, const StepObserver& observer = {});

/// run_trish with a zero Hessian estimate.
Trajectory run_trish_first_order(const ProblemOracle& oracle, const TrishConfig& config,
                                 const StepObserver& observer = {});

struct SgConfig {
  StepsizeSchedule stepsizes = StepsizeSchedule::constant(0.1);
  NoiseModel noise;
  long iterations = 100;
  std::uint64_t seed = 0;
  std::optional<Vector> initial_point;
  double divergence_threshold = 1e12;
};

/// x_{k+1} = x_k - alpha_k g_k; draws gradients from the same stream layout as TRish.
Trajectory run_sg(const ProblemOracle& oracle, const SgConfig& config);

Trajectory run_sg(const ProblemOracle& oracle, const StepsizeSchedule& stepsizes, const NoiseModel& noise, long K,
                  std::uint64_t seed);

}  // namespace trish
