#include <chrono>
#include <cmath>
#include <sstream>

#include "trish/errors.hpp"
#include "trish/optimizer.hpp"
#include "trish/simd.hpp"

namespace trish {

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::diverged: return "diverged";
    case RunStatus::non_finite: return "non_finite";
  }
  return "?";
}

void TrishConfig::validate() const {
  if (iterations < 0) throw ConfigError("iteration budget must be nonnegative");
  stepsizes.validate();
  gammas.validate();
  noise.validate();
  if (const auto* s = std::get_if<SteihaugSolver>(&solver)) {
    if (s->max_iters < 1) throw ConfigError("Steihaug-CG needs max_iters >= 1");
    if (!(s->tol > 0.0)) throw ConfigError("Steihaug-CG tolerance must be positive");
  } else if (!(std::get<ExactSolver>(solver).tol > 0.0)) {
    throw ConfigError("exact solver tolerance must be positive");
  }
  if (initial_point && !all_finite(*initial_point)) throw ConfigError("initial point must be finite");
}

Vector trish_step(const Vector& x, const Vector& g, const HessianEstimate& h, double alpha, double gamma1,
                  double gamma2, const SolverConfig& solver, StepDiagnostics* diagnostics) {
  if (x.size() != g.size() || static_cast<std::size_t>(g.size()) != h.dim()) {
    throw InputError("trish_step: dimension mismatch");
  }
  const double gnorm = std::sqrt(simd::sum_squares(view(g)));
  const Radius r = radius(gnorm, alpha, gamma1, gamma2);

  StepDiagnostics local;
  StepDiagnostics& d = diagnostics != nullptr ? *diagnostics : local;
  d = StepDiagnostics{};

  if (gnorm == 0.0) {
    d.zero_gradient = true;
    d.step.s = Vector::Zero(x.size());
    d.step.delta = r.delta;
    d.step.tag = r.tag;
    if (std::holds_alternative<ExactSolver>(solver)) d.step.upsilon = 0.0;
    return x;
  }

  if (const auto* cg = std::get_if<SteihaugSolver>(&solver)) {
    d.step = steihaug_cg(g, h, r.delta, SteihaugOptions{cg->max_iters, cg->tol});
    d.hessian_products = h.is_zero() ? 0 : d.step.cg_iterations;
  } else {
    const auto& exact = std::get<ExactSolver>(solver);
    Matrix dense = h.to_dense();
    dense = 0.5 * (dense + dense.transpose());
    const TrsSolution sol = exact_trs(g, dense, r.delta, exact.tol);
    d.step.s = sol.s;
    d.step.delta = r.delta;
    d.step.upsilon = sol.upsilon;
    d.step.boundary_hit = sol.s.norm() >= r.delta * (1.0 - 1e-12);
    d.step.model_decrease = -model_value(g, h, sol.s);
    d.step.cauchy_decrease = -model_value(g, h, cauchy_point(g, h, r.delta));
    d.step.cauchy_bound = cauchy_lower_bound(gnorm, r.delta, h.norm_bound());
    d.hessian_products = h.is_zero() ? 0 : static_cast<int>(h.dim());
    d.step.cg_iterations = 0;
  }
  d.step.tag = r.tag;

  Vector next = x;
  simd::axpy(1.0, view(d.step.s), view(next));
  return next;
}

namespace {

std::string echo(const TrishConfig& c, std::string_view algorithm) {
  std::ostringstream os;
  os << algorithm << " stepsizes=" << c.stepsizes.describe() << " gammas=" << c.gammas.describe()
     << " noise=" << describe(c.noise.gradient) << " hessian=" << describe(c.noise.hessian) << " solver=";
  if (const auto* s = std::get_if<SteihaugSolver>(&c.solver)) {
    os << "steihaug(" << s->max_iters << "," << s->tol << ")";
  } else {
    os << "exact(" << std::get<ExactSolver>(c.solver).tol << ")";
  }
  os << " K=" << c.iterations << " seed=" << c.seed;
  return os.str();
}

Trajectory run_trish_impl(const ProblemOracle& oracle, const TrishConfig& config, const StepObserver& observer,
                          std::string algorithm) {
  config.validate();
  Trajectory traj;
  traj.algorithm = std::move(algorithm);
  traj.seed = config.seed;
  traj.config_echo = echo(config, traj.algorithm);

  Vector x = config.initial_point ? *config.initial_point : oracle.default_start();
  if (static_cast<std::size_t>(x.size()) != oracle.dim()) throw ConfigError("initial point has the wrong dimension");

  RngStream grad_rng(config.seed, StreamPurpose::gradient_noise);
  RngStream hess_rng(config.seed, StreamPurpose::hessian_perturbation);

  double f = oracle.value(x);
  Vector true_grad = oracle.grad(x);
  require_finite(f, "initial objective");
  require_finite(true_grad, "initial gradient");
  const double f1 = f;

  traj.records.reserve(static_cast<std::size_t>(config.iterations) + 1);
  IterationRecord first;
  first.k = 0;
  first.f = f;
  first.grad_norm_true = true_grad.norm();
  traj.records.push_back(first);

  long cost = 0;
  for (long k = 1; k <= config.iterations; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const double alpha = stepsize_at(config.stepsizes, k);
    const Gammas gam = gammas_at(config.gammas, config.stepsizes, k);

    Vector next;
    StepDiagnostics diag;
    double f_next = 0.0;
    Vector grad_next;
    try {
      const GradientSample draw = draw_gradient(oracle, x, config.noise, k, alpha, grad_rng);
      const HessianEstimate h = sample_hessian(oracle, x, config.noise, hess_rng, draw.batch);
      next = trish_step(x, draw.g, h, alpha, gam.gamma1, gam.gamma2, config.solver, &diag);
      require_finite(next, "iterate");
      f_next = oracle.value(next);
      require_finite(f_next, "objective");
      grad_next = oracle.grad(next);
      require_finite(grad_next, "gradient");
      if (observer) {
        observer(StepEvent{k, x, next, draw.g, true_grad, h, diag, f, f_next, alpha, gam.gamma1, gam.gamma2});
      }
      cost += 1 + diag.hessian_products;

      IterationRecord rec;
      rec.k = k;
      rec.f = f_next;
      rec.grad_norm_true = grad_next.norm();
      rec.g_norm = draw.g.norm();
      rec.delta = diag.step.delta;
      rec.case_tag = static_cast<int>(diag.step.tag);
      rec.model_decrease = diag.step.model_decrease;
      rec.cauchy_decrease = diag.step.cauchy_decrease;
      rec.cauchy_bound = diag.step.cauchy_bound;
      rec.cg_iterations = diag.step.cg_iterations;
      rec.upsilon = diag.step.upsilon;
      rec.cost_units = cost;
      rec.alpha = alpha;
      rec.gamma1 = gam.gamma1;
      rec.gamma2 = gam.gamma2;
      rec.step_norm = diag.step.s.norm();
      rec.hessian_bound = h.norm_bound();
      rec.wall_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
      traj.records.push_back(rec);
    } catch (const EvaluationError& e) {
      traj.status = RunStatus::non_finite;
      traj.message = "iteration " + std::to_string(k) + ": " + e.what();
      break;
    }

    x = std::move(next);
    f = f_next;
    true_grad = std::move(grad_next);
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

}  // namespace

Trajectory run_trish(const ProblemOracle& oracle, const TrishConfig& config, const StepObserver& observer) {
  const bool first_order = std::holds_alternative<ZeroHessian>(config.noise.hessian);
  return run_trish_impl(oracle, config, observer, first_order ? "trish1" : "trish");
}

Trajectory run_trish_first_order(const ProblemOracle& oracle, const TrishConfig& config,
                                 const StepObserver& observer) {
  TrishConfig copy = config;
  copy.noise.hessian = ZeroHessian{};
  return run_trish_impl(oracle, copy, observer, "trish1");
}

}  // namespace trish
