#include <chrono>
#include <cmath>

#include "trish/errors.hpp"
#include "trish/optimizer.hpp"
#include "trish/simd.hpp"

namespace trish {

Trajectory run_sg(const ProblemOracle& oracle, const SgConfig& config) {
  if (config.iterations < 0) throw ConfigError("iteration budget must be nonnegative");
  config.stepsizes.validate();
  config.noise.validate();

  Trajectory traj;
  traj.algorithm = "sg";
  traj.seed = config.seed;
  traj.config_echo = "sg stepsizes=" + config.stepsizes.describe() + " noise=" + describe(config.noise.gradient) +
                     " K=" + std::to_string(config.iterations) + " seed=" + std::to_string(config.seed);

  Vector x = config.initial_point ? *config.initial_point : oracle.default_start();
  if (static_cast<std::size_t>(x.size()) != oracle.dim()) throw ConfigError("initial point has the wrong dimension");
  RngStream grad_rng(config.seed, StreamPurpose::gradient_noise);

  double f = oracle.value(x);
  require_finite(f, "initial objective");
  const double f1 = f;
  IterationRecord first;
  first.k = 0;
  first.f = f;
  first.grad_norm_true = oracle.grad(x).norm();
  traj.records.push_back(first);

  long cost = 0;
  for (long k = 1; k <= config.iterations; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const double alpha = stepsize_at(config.stepsizes, k);
    IterationRecord rec;
    try {
      const GradientSample draw = draw_gradient(oracle, x, config.noise, k, alpha, grad_rng);
      Vector next = x;
      simd::axpy(-alpha, view(draw.g), view(next));
      require_finite(next, "iterate");
      const double f_next = oracle.value(next);
      require_finite(f_next, "objective");
      const Vector grad_next = oracle.grad(next);
      require_finite(grad_next, "gradient");
      cost += 1;
      rec.k = k;
      rec.f = f_next;
      rec.grad_norm_true = grad_next.norm();
      rec.g_norm = draw.g.norm();
      rec.step_norm = alpha * rec.g_norm;
      rec.alpha = alpha;
      rec.cost_units = cost;
      rec.wall_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
      traj.records.push_back(rec);
      x = std::move(next);
      f = f_next;
    } catch (const EvaluationError& e) {
      traj.status = RunStatus::non_finite;
      traj.message = "iteration " + std::to_string(k) + ": " + e.what();
      break;
    }
    if (f > f1 + config.divergence_threshold) {
      traj.status = RunStatus::diverged;
      traj.message = "iteration " + std::to_string(k) + ": objective exceeded f(x_1) + " +
                     std::to_string(config.divergence_threshold);
      break;
    }
  }
  traj.final_point = x;
  return traj;
}

Trajectory run_sg(const ProblemOracle& oracle, const StepsizeSchedule& stepsizes, const NoiseModel& noise, long K,
                  std::uint64_t seed) {
  SgConfig c;
  c.stepsizes = stepsizes;
  c.noise = noise;
  c.iterations = K;
  c.seed = seed;
  return run_sg(oracle, c);
}

}  // namespace trish
