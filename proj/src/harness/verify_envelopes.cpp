// Monte-Carlo envelope suites and the deterministic complexity check.

#include <algorithm>
#include <cmath>

#include "trish/bounds.hpp"
#include "trish/problems.hpp"
#include "trish/subproblem.hpp"
#include "verify_internal.hpp"

namespace trish::detail {

namespace {

// SPD quadratic with c = 1, L_g = 10, started 5 units from its minimizer along a fixed direction.
struct PlSetup {
  QuadraticProblem problem = make_quadratic(10, 1.0, 10.0, 2024);
  Vector start;
  double c = 0.0, L_g = 0.0, f_inf = 0.0, gap0 = 0.0;

  PlSetup() {
    RngStream rng(0, StreamPurpose::initial_point);
    Vector u = rng.normal_vector(10);
    start = *problem.minimizer() + 5.0 * u / u.norm();
    c = *problem.constants().c;
    L_g = problem.constants().L_g;
    f_inf = *problem.constants().f_inf;
    gap0 = problem.value(start) - f_inf;
  }
};

std::size_t seed_count(const SuiteContext& ctx, std::size_t full) { return ctx.quick ? std::max<std::size_t>(20, full / 10) : full; }

void report_envelope(SuiteContext& ctx, const std::string& name, const SeedStats& stats,
                     const std::function<double(long)>& envelope) {
  ctx.check(name + ": all runs completed", stats.incomplete == 0, static_cast<double>(stats.incomplete), 0.0);
  const EnvelopeResult r = compare_envelope(stats, envelope);
  ctx.at_most(name + ": seed-mean gap <= envelope + 3 SE at every k", r.worst_excess, 0.0,
              fmt("%ld seeds; largest excess at k=%ld (mean %.6g, envelope %.6g); tightest k>=2 is k=%ld at %.3f of "
                  "envelope + 3 SE",
                  stats.runs, r.worst_row + 1, r.worst_mean, r.worst_envelope, r.tightest_row + 1, r.tightest_ratio));
}

}  // namespace

void suite_pl_fixed(SuiteContext& ctx) {
  const PlSetup s;
  const double gamma = 1.0, M_H = 10.0, M_g = 1.0;
  const double alpha = max_basic_stepsize(gamma, gamma, s.L_g, M_H);
  check_stepsize(alpha, gamma, gamma, s.L_g, M_H, BasicStepsizeRule{}, Strictness::strict);

  TrishConfig tc;
  tc.stepsizes = StepsizeSchedule::constant(alpha);
  tc.gammas = GammaSchedule::constant(gamma, gamma);
  tc.noise.gradient = BoundedNoise{M_g};
  tc.noise.hessian = ExactCappedHessian{M_H};
  tc.iterations = 2000;
  tc.initial_point = s.start;

  const SeedStats stats = run_seeds(
      s.problem, tc, seed_range(1000, seed_count(ctx, 200)), [&](const IterationRecord& r) { return r.f - s.f_inf; },
      ctx.audit);
  report_envelope(ctx, "linear-to-neighborhood", stats, [&](long k) {
    return bounds::pl_fixed_envelope(k, gamma, gamma, alpha, M_g, s.c, s.gap0);
  });
  const double theta = bounds::pl_fixed_theta(gamma, gamma, M_g, s.c);
  ctx.at_most("terminal seed-mean gap <= theta + 3 SE", stats.mean.back(), theta + 3.0 * stats.se.back(),
              fmt("theta = %.6g, alpha = %.6g, gap0 = %.6g", theta, alpha, s.gap0));
}

void suite_pl_merging(SuiteContext& ctx) {
  const PlSetup s;
  const double gamma1 = 1.0, eta = 2.0, M_H = 1.0, M_g = 1.0, a = 2.5, b = 120.0;
  const long K = 2000;
  TrishConfig tc;
  tc.stepsizes = StepsizeSchedule::diminishing(a, b);
  tc.gammas = GammaSchedule::merging(gamma1, eta);
  tc.noise.gradient = BoundedNoise{M_g};
  tc.noise.hessian = ExactCappedHessian{M_H};
  tc.iterations = K;
  tc.initial_point = s.start;

  long bad = 0;
  for (long k = 1; k <= K; ++k) {
    const double alpha = stepsize_at(tc.stepsizes, k);
    const Gammas g = gammas_at(tc.gammas, tc.stepsizes, k);
    if (!validate_stepsize(alpha, g.gamma1, g.gamma2, s.L_g, M_H, MergingStepsizeRule{eta})) ++bad;
  }
  ctx.at_most("merging stepsize preconditions hold for every k", static_cast<double>(bad), 0.0);

  const double gamma2_1 = gammas_at(tc.gammas, tc.stepsizes, 1).gamma2;
  const auto constants = bounds::pl_sublinear_constants(a, b, eta, gamma1, gamma2_1, s.c, s.L_g, M_H, M_g, s.gap0);
  const SeedStats stats = run_seeds(
      s.problem, tc, seed_range(2000, seed_count(ctx, 200)), [&](const IterationRecord& r) { return r.f - s.f_inf; },
      ctx.audit);
  report_envelope(ctx, "sublinear (merging gammas)", stats, [&](long k) {
    return bounds::pl_sublinear_envelope(k, a, b, eta, gamma1, gamma2_1, s.c, s.L_g, M_H, M_g, s.gap0);
  });
  ctx.check("envelope constants", true, constants.phi, 0.0,
            fmt("delta1 = %.6g, delta2 = %.6g, phi = %.6g", constants.delta1, constants.delta2, constants.phi));
}

void suite_pl_sublinear(SuiteContext& ctx) {
  const PlSetup s;
  const double gamma = 1.0, M_H = 10.0, M_g = 1.0, a = 8.0;
  const double alpha_max = max_basic_stepsize(gamma, gamma, s.L_g, M_H);
  const double b = std::ceil(a / alpha_max);  // alpha_1 = a/(b+1) < alpha_max
  TrishConfig tc;
  tc.stepsizes = StepsizeSchedule::diminishing(a, b);
  tc.gammas = GammaSchedule::constant(gamma, gamma);
  tc.noise.gradient = StepwiseNoise{M_g};
  tc.noise.hessian = ExactCappedHessian{M_H};
  tc.iterations = 2000;
  tc.initial_point = s.start;
  check_stepsize(stepsize_at(tc.stepsizes, 1), gamma, gamma, s.L_g, M_H, BasicStepsizeRule{}, Strictness::strict);

  const SeedStats stats = run_seeds(
      s.problem, tc, seed_range(3000, seed_count(ctx, 200)), [&](const IterationRecord& r) { return r.f - s.f_inf; },
      ctx.audit);
  report_envelope(ctx, "sublinear (fixed gammas, stepwise noise)", stats, [&](long k) {
    return bounds::pl_sublinear_fixed_gamma_envelope(k, a, b, gamma, gamma, M_g, s.c, s.gap0);
  });
}

void suite_geometric(SuiteContext& ctx) {
  const PlSetup s;
  const double gamma = 1.0, M_H = 10.0, M_g = 1.0, zeta = 0.5;
  const double alpha = max_basic_stepsize(gamma, gamma, s.L_g, M_H);
  TrishConfig tc;
  tc.stepsizes = StepsizeSchedule::constant(alpha);
  tc.gammas = GammaSchedule::constant(gamma, gamma);
  tc.noise.gradient = GeometricNoise{M_g, zeta};
  tc.noise.hessian = ExactCappedHessian{M_H};
  tc.iterations = 500;
  tc.initial_point = s.start;

  const auto constants = bounds::pl_geometric_constants(gamma, gamma, alpha, M_g, s.c, zeta, s.gap0);
  const SeedStats stats = run_seeds(
      s.problem, tc, seed_range(4000, seed_count(ctx, 200)), [&](const IterationRecord& r) { return r.f - s.f_inf; },
      ctx.audit);
  report_envelope(ctx, "geometric noise linear rate", stats, [&](long k) {
    return bounds::pl_geometric_envelope(k, gamma, gamma, alpha, M_g, s.c, zeta, s.gap0);
  });
  ctx.check("envelope constants", constants.rho > 0.0 && constants.rho < 1.0, constants.rho, 1.0,
            fmt("omega = %.6g, rho = %.8g", constants.omega, constants.rho));
}

void suite_nonconvex_fixed(SuiteContext& ctx) {
  const RosenbrockProblem problem(10, 1.5);
  const double L_g = problem.constants().L_g;
  const double gamma = 1.0, M_H = 1.0, M_g = 1.0;
  const double alpha = max_basic_stepsize(gamma, gamma, L_g, M_H);
  const long K = ctx.quick ? 2000 : 5000;
  TrishConfig tc;
  tc.stepsizes = StepsizeSchedule::constant(alpha);
  tc.gammas = GammaSchedule::constant(gamma, gamma);
  tc.noise.gradient = BoundedNoise{M_g};
  tc.noise.hessian = ExactCappedHessian{M_H};
  tc.iterations = K;
  tc.initial_point = Vector::Zero(10);

  const double f1 = problem.value(*tc.initial_point);
  const double bound = bounds::nonconvex_fixed_bound(K, gamma, gamma, alpha, M_g, f1, 0.0);

  long outside = 0;
  StepObserver box = [&](const StepEvent& e) {
    if (!problem.in_box(e.x_next)) ++outside;
  };
  // Per-seed average of |grad f(x_k)|^2 over x_1..x_K (rows 0..K-1).
  std::vector<double> per_seed;
  StepObserver audit = ctx.audit.observer();
  for (std::uint64_t seed : seed_range(5000, ctx.quick ? 20 : 100)) {
    tc.seed = seed;
    const Trajectory t = run_trish(problem, tc, [&](const StepEvent& e) {
      audit(e);
      box(e);
    });
    if (!t.ok()) continue;
    double sum = 0.0;
    for (long r = 0; r < K; ++r) sum += std::pow(t.records[static_cast<std::size_t>(r)].grad_norm_true, 2);
    per_seed.push_back(sum / static_cast<double>(K));
  }
  const double n = static_cast<double>(per_seed.size());
  double mean = 0.0, var = 0.0;
  for (double v : per_seed) mean += v / n;
  for (double v : per_seed) var += (v - mean) * (v - mean) / std::max(1.0, n - 1.0);
  const double se = std::sqrt(var / n);
  ctx.check("all runs completed", per_seed.size() == (ctx.quick ? 20u : 100u), n, ctx.quick ? 20 : 100);
  ctx.at_most("iterates stay in the certified box", static_cast<double>(outside), 0.0);
  ctx.at_most("mean (1/K) sum |grad f|^2 <= bound + 3 SE", mean, bound + 3.0 * se,
              fmt("mean %.6g, SE %.3g, bound %.6g, alpha %.4g", mean, se, bound, alpha));
}

void suite_complexity(SuiteContext& ctx) {
  const QuadraticProblem base = make_quadratic(5, 1.0, 4.0, 7);
  const QuarticProblem problem(base.A(), base.b(), 0.5, 3.0);
  const double L_H = *problem.constants().L_H;
  const double lambda1 = 0.99, lambda2 = 0.99, lambda3 = 0.99;
  ctx.check("parameter triple passes the feasibility inequality",
            bounds::complexity_params_check(lambda1, lambda2, lambda3, 0.0, 0.0),
            bounds::complexity_params_lhs(lambda1, lambda2, lambda3, 0.0, 0.0), 1.0 / 6.0);

  const double gamma1 = 1e8, gamma2 = 1e-8;
  for (double eps : {1e-1, 1e-2}) {
    const double alpha = 2.0 * std::sqrt(eps) / L_H;
    const double need = bounds::complexity_decrease(eps, L_H);
    double worst_budget_use = 0.0;
    long shortfalls = 0, counted = 0, over_budget = 0, box_violations = 0, never_closed = 0;
    double worst_kkt = 0.0, g_low = std::numeric_limits<double>::infinity(), g_high = 0.0;
    for (std::uint64_t seed : seed_range(1, ctx.quick ? 3 : 10)) {
      RngStream rng(seed, StreamPurpose::initial_point);
      Vector x1(5);
      for (auto& v : x1) v = 2.5 * (2.0 * rng.uniform() - 1.0);
      const double gap0 = problem.value(x1) - *problem.constants().f_inf;
      const std::int64_t budget = bounds::complexity_budget(eps, L_H, gap0);

      TrishConfig tc;
      tc.stepsizes = StepsizeSchedule::constant(alpha);
      tc.gammas = GammaSchedule::constant(gamma1, gamma2);
      tc.solver = ExactSolver{};
      tc.noise.gradient = NoNoise{};
      tc.noise.hessian = ExactCappedHessian{};
      tc.iterations = static_cast<long>(std::min<std::int64_t>(budget + 1, 5000));
      tc.initial_point = x1;
      tc.seed = seed;

      bool window_open = true;
      long large = 0;
      StepObserver audit = ctx.audit.observer();
      run_trish(problem, tc, [&](const StepEvent& e) {
        audit(e);
        if (!window_open || e.diagnostics.zero_gradient) return;
        const double u = *e.diagnostics.step.upsilon;
        const double gn = e.g.norm();
        g_low = std::min(g_low, gn);
        g_high = std::max(g_high, gn);
        if (!problem.in_box(e.x) || !problem.in_box(e.x_next)) ++box_violations;
        const KktResiduals r = kkt_residuals(e.g, e.h.to_dense(), e.diagnostics.step.delta, e.diagnostics.step.s, u);
        worst_kkt = std::max({worst_kkt, r.stationarity, r.complementarity, -r.psd_margin});
        if (u > std::sqrt(eps)) {
          ++large;
          if (e.f - e.f_next < need - 1e-12) ++shortfalls;
        } else {
          window_open = false;
        }
      });
      if (window_open) ++never_closed;
      counted += large;
      if (large > budget) ++over_budget;
      worst_budget_use = std::max(worst_budget_use, static_cast<double>(large) / static_cast<double>(budget));
    }
    const std::string tag = fmt("eps=%g: ", eps);
    ctx.at_most(tag + "decrease >= eps^{3/2}/(3 L_H^2) whenever upsilon > sqrt(eps)", static_cast<double>(shortfalls),
                0.0, fmt("%ld such iterations, required decrease %.6g", counted, need));
    ctx.at_most(tag + "iterations before upsilon <= sqrt(eps) within budget", static_cast<double>(over_budget), 0.0,
                fmt("largest count is %.3g of its budget", worst_budget_use));
    ctx.at_most(tag + "every run reaches upsilon <= sqrt(eps)", static_cast<double>(never_closed), 0.0);
    ctx.at_most(tag + "exact-solve KKT residuals", worst_kkt, 1e-8);
    ctx.at_most(tag + "iterates in the box certifying L_H", static_cast<double>(box_violations), 0.0);
    ctx.check(tag + "gamma1 >= lambda2/G_low and gamma2 <= 1/(lambda3 G_high)",
              gamma1 >= lambda2 / g_low && gamma2 <= 1.0 / (lambda3 * g_high), g_low, lambda2 / gamma1,
              fmt("G_low %.4g, G_high %.4g", g_low, g_high));
  }
}

}  // namespace trish::detail
