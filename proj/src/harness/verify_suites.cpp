// Suites that do not need Monte-Carlo envelopes.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>

#include "trish/bounds.hpp"
#include "trish/harness.hpp"
#include "trish/problems.hpp"
#include "trish/reference_trs.hpp"
#include "trish/subproblem.hpp"
#include "verify_internal.hpp"

namespace trish::detail {

namespace {

double rel_err(const Vector& a, const Vector& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

Matrix orthogonal(Eigen::Index n, RngStream& rng) {
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(n, n);
}

// kind 0: positive definite, 1: indefinite, 2: singular PSD, 3: negative definite
Matrix random_symmetric(Eigen::Index n, int kind, RngStream& rng) {
  Vector ev(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (kind) {
      case 0: ev(i) = 0.1 + 4.9 * rng.uniform(); break;
      case 1: ev(i) = -5.0 + 10.0 * rng.uniform(); break;
      case 2: ev(i) = i == 0 ? 0.0 : 5.0 * rng.uniform(); break;
      default: ev(i) = -0.1 - 4.9 * rng.uniform(); break;
    }
  }
  const Matrix q = orthogonal(n, rng);
  Matrix h = q * ev.asDiagonal() * q.transpose();
  return 0.5 * (h + h.transpose());
}

}  // namespace

// ---------------------------------------------------------------------------

void suite_radius(SuiteContext& ctx) {
  struct Row {
    double g, alpha, g1, g2, delta;
    RadiusCase tag;
  };
  const Row table[] = {{0.05, 0.1, 10, 1, 0.05, RadiusCase::case1},
                       {0.5, 0.1, 10, 1, 0.1, RadiusCase::case2},
                       {4, 0.1, 10, 1, 0.4, RadiusCase::case3},
                       {0.1, 0.1, 10, 1, 0.1, RadiusCase::case2},
                       {1.0, 0.1, 10, 1, 0.1, RadiusCase::case2}};
  double worst = 0.0;
  bool tags = true;
  for (const Row& r : table) {
    const Radius out = radius(r.g, r.alpha, r.g1, r.g2);
    worst = std::max(worst, std::abs(out.delta - r.delta));
    tags = tags && out.tag == r.tag;
  }
  ctx.check("three-case table and breakpoint tags", tags && worst <= 1e-15, worst, 1e-15);

  RngStream rng(11, StreamPurpose::problem_data);
  double gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double alpha = std::pow(10.0, -3.0 + 3.0 * rng.uniform());
    const double g2 = std::pow(10.0, -2.0 + 3.0 * rng.uniform());
    const double g1 = g2 * std::pow(10.0, 2.0 * rng.uniform());
    gap = std::max(gap, std::abs(g1 * alpha * (1.0 / g1) - alpha));
    gap = std::max(gap, std::abs(g2 * alpha * (1.0 / g2) - alpha));
    tags = tags && radius(1.0 / g1, alpha, g1, g2).tag == RadiusCase::case2 &&
           radius(1.0 / g2, alpha, g1, g2).tag == RadiusCase::case2;
  }
  ctx.check("adjacent formulas agree at both breakpoints", tags && gap <= 1e-12, gap, 1e-12);

  // Steplength with H = 0 along 1e4 sorted norms; Lipschitz constant g1 * alpha.
  const double alpha = 0.1, g1 = 10.0, g2 = 1.0;
  const HessianEstimate zero = HessianEstimate::zero(3);
  std::vector<double> norms(10000);
  for (double& v : norms) v = 3.0 / g2 * rng.uniform();
  norms.push_back(1.0 / g1);
  norms.push_back(1.0 / g2);
  std::sort(norms.begin(), norms.end());
  Vector dir = rng.normal_vector(3);
  dir /= dir.norm();
  double prev_norm = -1.0, prev_len = 0.0, excess = -1.0;
  for (double gn : norms) {
    const Vector g = gn * dir;
    const Vector x = Vector::Zero(3);
    StepDiagnostics d;
    const Vector xn = trish_step(x, g, zero, alpha, g1, g2, SteihaugSolver{}, &d);
    const double len = (xn - x).norm();
    if (prev_norm >= 0.0) excess = std::max(excess, std::abs(len - prev_len) - g1 * alpha * (gn - prev_norm) - 1e-12);
    prev_norm = gn;
    prev_len = len;
  }
  ctx.at_most("steplength continuous in |g| with H = 0 (1e4 norms)", excess, 0.0,
              "max |jump| beyond the Lipschitz allowance");

  // Optimizer-level examples.
  const Vector x0 = Vector::Zero(2);
  Vector g(2);
  g << 0.0, 0.0;
  double err = (trish_step(x0, g, HessianEstimate::zero(2), 0.1, 1, 1, SteihaugSolver{}) - x0).norm();
  g << 1.0, 0.0;
  Vector want(2);
  want << -0.1, 0.0;
  err = std::max(err, (trish_step(x0, g, HessianEstimate::zero(2), 0.1, 1, 1, SteihaugSolver{}) - want).norm());
  g << 0.05, 0.0;
  want << -0.05, 0.0;
  err = std::max(err, (trish_step(x0, g, HessianEstimate::zero(2), 0.1, 10, 1, SteihaugSolver{}) - want).norm());
  ctx.at_most("trish_step examples (g = 0, breakpoint, case 1)", err, 1e-15);
}

// ---------------------------------------------------------------------------

void suite_equivalence(SuiteContext& ctx) {
  const LogisticProblem problem = make_logistic(200, 5, 0.01, 3);
  const long K = 100;
  const double gamma = 2.0, alpha = 0.05;
  struct Variant {
    const char* name;
    GradientNoise noise;
  };
  const Variant variants[] = {{"minibatch(16)", MiniBatchNoise{16}}, {"bounded(M_g=0.5)", BoundedNoise{0.5}}};
  for (const Variant& v : variants) {
    double worst = 0.0;
    for (std::uint64_t seed : seed_range(1, ctx.quick ? 2 : 5)) {
      TrishConfig tc;
      tc.stepsizes = StepsizeSchedule::constant(alpha);
      tc.gammas = GammaSchedule::constant(gamma, gamma);
      tc.noise.gradient = v.noise;
      tc.iterations = K;
      tc.seed = seed;
      std::vector<Vector> path;
      StepObserver audit = ctx.audit.observer();
      run_trish_first_order(problem, tc, [&](const StepEvent& e) {
        audit(e);
        path.push_back(e.x_next);
      });
      // SG prefixes share the gradient stream, so the k-step run ends at x_k.
      NoiseModel nm;
      nm.gradient = v.noise;
      for (long k = 1; k <= K; ++k) {
        const Trajectory sg = run_sg(problem, StepsizeSchedule::constant(gamma * alpha), nm, k, seed);
        worst = std::max(worst, (sg.final_point - path[static_cast<std::size_t>(k - 1)]).cwiseAbs().maxCoeff());
      }
    }
    ctx.at_most(std::string("TRish(H=0, g1=g2) equals SG with stepsize g*alpha, ") + v.name, worst, 1e-12,
                "max per-coordinate difference over 100 iterations");
  }
}

// ---------------------------------------------------------------------------

void suite_lemmas(SuiteContext& ctx) {
  RngStream rng(21, StreamPurpose::problem_data);
  const int instances = ctx.quick ? 2000 : 10000;
  double feas = 0.0;
  for (int i = 0; i < instances; ++i) {
    const auto n = static_cast<Eigen::Index>(1 + rng.index(10));
    const int kind = static_cast<int>(rng.index(5));
    const Matrix hm = kind == 4 ? Matrix::Zero(n, n) : random_symmetric(n, kind, rng);
    const HessianEstimate h = HessianEstimate::from_matrix(hm);
    const Vector g = rng.normal_vector(static_cast<std::size_t>(n)) * std::pow(10.0, -2.0 + 3.0 * rng.uniform());
    const double delta = std::pow(10.0, -3.0 + 4.0 * rng.uniform());
    const TRStep st = steihaug_cg(g, h, delta, SteihaugOptions{1 + static_cast<int>(rng.index(5)), 1e-10});
    ctx.audit.record(g, h, st.s, delta);
    ctx.audit.record(g, h, cauchy_point(g, h, delta), delta);
    feas = std::max(feas, st.s.norm() / delta - 1.0);
  }
  ctx.at_most("steihaug steps feasible on random instances", feas, 1e-12);

  // Cauchy point examples.
  {
    Vector g(2);
    g << 1.0, 0.0;
    Vector want(2);
    want << -1.0, 0.0;
    double err = (cauchy_point(g, HessianEstimate::from_matrix(Matrix::Identity(2, 2)), 10.0) - want).norm();
    want << -2.0, 0.0;
    err = std::max(err, (cauchy_point(g, HessianEstimate::zero(2), 2.0) - want).norm());
    Matrix ind(2, 2);
    ind << -1.0, 0.0, 0.0, 1.0;
    want << -1.0, 0.0;
    err = std::max(err, (cauchy_point(g, HessianEstimate::from_matrix(ind), 1.0) - want).norm());
    ctx.at_most("cauchy point examples", err, 1e-15);
  }

  // Taylor bound and steplength bound along noisy runs on a quadratic (L_g known, Hessian constant).
  const QuadraticProblem q = make_quadratic(8, 0.5, 20.0, 5);
  const double L_g = q.constants().L_g;
  double taylor = -1.0, steplen = -1.0;
  for (std::uint64_t seed : seed_range(1, ctx.quick ? 5 : 20)) {
    TrishConfig tc;
    tc.stepsizes = StepsizeSchedule::diminishing(2.0, 10.0);
    tc.gammas = GammaSchedule::constant(4.0, 0.5);
    tc.noise.gradient = BoundedNoise{2.0};
    tc.noise.hessian = PerturbedHessian{10.0, 2.0};
    tc.iterations = 300;
    tc.seed = seed;
    tc.initial_point = Vector::Constant(8, 3.0);
    StepObserver audit = ctx.audit.observer();
    run_trish(q, tc, [&](const StepEvent& e) {
      audit(e);
      const Vector& s = e.diagnostics.step.s;
      const double rhs = e.f + e.g.dot(s) + 0.5 * s.dot(e.h.apply(s)) + (e.true_grad - e.g).dot(s) +
                         0.5 * (L_g + e.h.norm_bound()) * s.squaredNorm() + 1e-9;
      taylor = std::max(taylor, e.f_next - rhs);
      const double bound = e.alpha * std::max(1.0, e.gamma1 * e.g.norm());
      steplen = std::max(steplen, (e.x_next - e.x).norm() - bound * (1.0 + 1e-12));
    });
  }
  ctx.at_most("per-step Taylor bound on a quadratic", taylor, 0.0, "max f(x+s) - bound");
  ctx.at_most("steplength <= alpha max{1, gamma1 |g|}", steplen, 0.0);

  // Stepsize preconditions.
  const bool basic_ok = validate_stepsize(0.2, 1, 1, 0.5, 0.5, BasicStepsizeRule{}) &&
                        !validate_stepsize(0.3, 1, 1, 0.5, 0.5, BasicStepsizeRule{});
  const bool merging_ok = validate_stepsize(0.1, 1, 0.95, 0.2, 0.2, MergingStepsizeRule{1.0});
  ctx.check("stepsize precondition examples", basic_ok && merging_ok, basic_ok && merging_ok ? 0.0 : 1.0, 0.0);
}

// ---------------------------------------------------------------------------

void suite_trs_oracle(SuiteContext& ctx) {
  RngStream rng(31, StreamPurpose::problem_data);
  const int random_instances = ctx.quick ? 200 : 1000;
  const int hard_instances = ctx.quick ? 10 : 50;
  double stat = 0.0, comp = 0.0, psd = std::numeric_limits<double>::infinity(), obj = 0.0, feas = 0.0;

  auto audit = [&](const Vector& g, const Matrix& h, double delta) {
    const TrsSolution sol = exact_trs(g, h, delta);
    const KktResiduals r = kkt_residuals(g, h, delta, sol.s, sol.upsilon);
    stat = std::max(stat, r.stationarity);
    comp = std::max(comp, r.complementarity);
    psd = std::min(psd, r.psd_margin);
    feas = std::max(feas, sol.s.norm() / delta - 1.0);
    const double primal = g.dot(sol.s) + 0.5 * sol.s.dot(h * sol.s);
    const double dual = reference::trs_dual_optimum(g, h, delta).objective;
    obj = std::max(obj, std::abs(primal - dual));
  };

  for (int i = 0; i < random_instances; ++i) {
    const auto n = static_cast<Eigen::Index>(1 + rng.index(10));
    const Matrix h = random_symmetric(n, static_cast<int>(rng.index(4)), rng);
    const Vector g = rng.normal_vector(static_cast<std::size_t>(n));
    audit(g, h, std::pow(10.0, -2.0 + 3.0 * rng.uniform()));
  }
  for (int i = 0; i < hard_instances; ++i) {
    // g orthogonal to the minimal eigenspace and delta beyond |(H - lmin I)^+ g|.
    const auto n = static_cast<Eigen::Index>(2 + rng.index(9));
    const Eigen::Index mult = 1 + static_cast<Eigen::Index>(rng.index(std::min<std::size_t>(2, n - 1)));
    const double lmin = -0.01 - 2.0 * rng.uniform();
    Vector ev(n);
    for (Eigen::Index j = 0; j < n; ++j) ev(j) = j < mult ? lmin : lmin + 0.1 + 4.0 * rng.uniform();
    const Matrix q = orthogonal(n, rng);
    Matrix h = q * ev.asDiagonal() * q.transpose();
    h = 0.5 * (h + h.transpose());
    Vector coef = Vector::Zero(n);
    if (i % 10 != 0) {  // every tenth instance has g = 0
      for (Eigen::Index j = mult; j < n; ++j) coef(j) = rng.normal();
    }
    const Vector g = q * coef;
    double inner = 0.0;
    for (Eigen::Index j = mult; j < n; ++j) inner += std::pow(coef(j) / (ev(j) - lmin), 2);
    audit(g, h, std::sqrt(inner) * (1.5 + 2.0 * rng.uniform()) + 1e-3);
  }
  ctx.at_most("KKT stationarity |g + (H + uI)s|", stat, 1e-8);
  ctx.check("KKT PSD margin lambda_min(H + uI)", psd >= -1e-8, psd, -1e-8);
  ctx.at_most("KKT complementarity |u (delta - |s|)|", comp, 1e-8);
  ctx.at_most("feasibility |s|/delta - 1", feas, 1e-12);
  ctx.at_most("objective vs dual oracle", obj, 1e-8,
              fmt("%d random + %d hard-case instances", random_instances, hard_instances));

  // Worked examples.
  Vector g(2);
  g << 3.0, 4.0;
  const Matrix I = Matrix::Identity(2, 2);
  TrsSolution a = exact_trs(g, I, 10.0), b = exact_trs(g, I, 1.0);
  Vector sa(2), sb(2);
  sa << -3.0, -4.0;
  sb << -0.6, -0.8;
  Matrix d(2, 2);
  d << -1.0, 0.0, 0.0, 2.0;
  TrsSolution c = exact_trs(Vector::Zero(2), d, 1.0);
  const double err = std::max({(a.s - sa).norm(), std::abs(a.upsilon), (b.s - sb).norm(), std::abs(b.upsilon - 4.0),
                               std::abs(std::abs(c.s(0)) - 1.0), std::abs(c.s(1)), std::abs(c.upsilon - 1.0)});
  ctx.at_most("exact TRS worked examples", err, 1e-10);
}

// ---------------------------------------------------------------------------

void suite_oracles(SuiteContext& ctx) {
  const int points = ctx.quick ? 20 : 100;
  RngStream rng(41, StreamPurpose::problem_data);

  const QuadraticProblem quad = make_quadratic(10, 1.0, 10.0, 1);
  const LogisticProblem logi = make_logistic(200, 6, 0.1, 2);
  const RosenbrockProblem rosen(10, 1.5);
  const QuadraticProblem qa = make_quadratic(5, 1.0, 4.0, 7);
  const QuarticProblem quart(qa.A(), qa.b(), 0.5, 3.0);

  struct Entry {
    const ProblemOracle* p;
    double spread;  // sample points uniformly in [-spread, spread]^n
  };
  const Entry entries[] = {{&quad, 3.0}, {&logi, 2.0}, {&rosen, 1.5}, {&quart, 3.0}};
  for (const Entry& e : entries) {
    const auto n = e.p->dim();
    double gerr = 0.0, herr = 0.0, sym = 0.0, lin = 0.0;
    for (int i = 0; i < points; ++i) {
      Vector x(static_cast<Eigen::Index>(n));
      for (auto& v : x) v = e.spread * (2.0 * rng.uniform() - 1.0);
      const Vector v = rng.normal_vector(n), u = rng.normal_vector(n);
      gerr = std::max(gerr, rel_err(e.p->grad(x), gradient_finite_difference(*e.p, x, default_fd_step(x))));
      herr = std::max(herr, rel_err(e.p->hvp(x, v), hvp_finite_difference(*e.p, x, v, default_fd_step(x))));
      sym = std::max(sym, std::abs(u.dot(e.p->hvp(x, v)) - v.dot(e.p->hvp(x, u))) /
                              std::max(1.0, u.norm() * v.norm() * e.p->constants().L_g));
      lin = std::max(lin, rel_err(e.p->hvp(x, 2.0 * v - u), 2.0 * e.p->hvp(x, v) - e.p->hvp(x, u)));
    }
    ctx.at_most(e.p->name() + ": gradient vs central differences", gerr, 1e-6);
    ctx.at_most(e.p->name() + ": hvp vs hvp_finite_difference", herr, 1e-6);
    ctx.at_most(e.p->name() + ": hvp symmetry", sym, 1e-10);
    ctx.at_most(e.p->name() + ": hvp linearity", lin, 1e-10);
  }

  // Rosenbrock at (1, 1).
  {
    const RosenbrockProblem r2(2, 2.0);
    Vector x(2), v(2);
    x << 1.0, 1.0;
    v << 1.0, 0.0;
    ctx.at_most("rosenbrock hvp at (1,1) vs finite differences", rel_err(r2.hvp(x, v), hvp_finite_difference(r2, x, v, 1e-5)),
                1e-6);
  }

  // Quadratic constants.
  {
    const Vector& ev = quad.eigenvalues();
    const double c = *quad.constants().c;
    double pl = -1.0;
    for (int i = 0; i < 1000; ++i) {
      const Vector x = 5.0 * rng.normal_vector(10);
      pl = std::max(pl, 2.0 * c * (quad.value(x) - *quad.constants().f_inf) - quad.grad(x).squaredNorm());
    }
    ctx.at_most("quadratic PL inequality at 1000 points", pl, 1e-10);
    const Vector xs = quad.A().colPivHouseholderQr().solve(quad.b());
    ctx.at_most("quadratic f_inf vs direct solve", std::abs(quad.value(xs) - *quad.constants().f_inf), 1e-10);
    ctx.at_most("quadratic eigenvalue endpoints (1, 10)", std::max(std::abs(ev(0) - 1.0), std::abs(ev(9) - 10.0)),
                1e-10);
  }

  // Noise models: unbiasedness, variance conformity and the second-moment identity.
  const long draws = ctx.quick ? 20000 : 100000;
  const QuadraticProblem q4 = make_quadratic(4, 1.0, 4.0, 9);
  Vector x4(4);
  x4 << 0.3, -1.0, 2.0, 0.5;
  struct NoiseCase {
    std::string name;
    GradientNoise noise;
    long k;
    double alpha;
  };
  const NoiseCase cases[] = {{"bounded(1)", BoundedNoise{1.0}, 1, 0.1},
                             {"stepwise(2)", StepwiseNoise{2.0}, 4, 0.3},
                             {"geometric(1, 0.5) at k=3", GeometricNoise{1.0, 0.5}, 3, 0.1}};
  for (const NoiseCase& nc : cases) {
    NoiseModel nm;
    nm.gradient = nc.noise;
    const double target = target_variance(nc.noise, nc.k, nc.alpha);
    const Vector truth = q4.grad(x4);
    RngStream s(77, StreamPurpose::gradient_noise);
    Vector mean = Vector::Zero(4);
    double m1 = 0.0, m2 = 0.0, i1 = 0.0, i2 = 0.0;
    for (long i = 0; i < draws; ++i) {
      const Vector g = sample_gradient(q4, x4, nm, nc.k, nc.alpha, s);
      const Vector e = g - truth;
      mean += e;
      const double sq = e.squaredNorm();
      m1 += sq;
      m2 += sq * sq;
      const double id = g.squaredNorm() - sq;  // should average to |grad f|^2
      i1 += id;
      i2 += id * id;
    }
    const double N = static_cast<double>(draws);
    mean /= N;
    const double var_mean = m1 / N, var_se = std::sqrt(std::max(0.0, m2 / N - var_mean * var_mean) / N);
    const double id_mean = i1 / N, id_se = std::sqrt(std::max(0.0, i2 / N - id_mean * id_mean) / N);
    ctx.at_most(nc.name + ": unbiased", mean.norm(), 3.0 * std::sqrt(target / N));
    ctx.at_most(nc.name + ": variance within 3 SE of target", std::abs(var_mean - target), 3.0 * var_se,
                fmt("empirical %.6g, target %.6g", var_mean, target));
    ctx.at_most(nc.name + ": E|g-grad|^2 + |grad|^2 = E|g|^2", std::abs(id_mean - truth.squaredNorm()), 3.0 * id_se);
  }
  {
    const long mb_draws = draws / 10;
    NoiseModel nm;
    nm.gradient = MiniBatchNoise{8};
    const Vector xl = 0.5 * Vector::Ones(6);
    const Vector truth = logi.grad(xl);
    // Variance of a with-replacement mean of 8 components: (1/8)(1/N) sum |grad f_i - grad f|^2.
    double comp = 0.0;
    for (std::size_t i = 0; i < logi.num_components(); ++i) {
      const std::size_t idx[] = {i};
      comp += (logi.batch_grad(xl, idx) - truth).squaredNorm();
    }
    const double target = comp / static_cast<double>(logi.num_components()) / 8.0;
    RngStream s(78, StreamPurpose::gradient_noise);
    Vector mean = Vector::Zero(6);
    double m1 = 0.0, m2 = 0.0;
    for (long i = 0; i < mb_draws; ++i) {
      const Vector e = sample_gradient(logi, xl, nm, 1, 0.1, s) - truth;
      mean += e;
      m1 += e.squaredNorm();
      m2 += e.squaredNorm() * e.squaredNorm();
    }
    const double N = static_cast<double>(mb_draws);
    mean /= N;
    const double var_mean = m1 / N, var_se = std::sqrt(std::max(0.0, m2 / N - var_mean * var_mean) / N);
    ctx.at_most("minibatch(8): unbiased", mean.norm(), 3.0 * std::sqrt(target / N));
    ctx.at_most("minibatch(8): variance matches component spread", std::abs(var_mean - target), 3.0 * var_se);
    NoiseModel full;
    full.gradient = MiniBatchNoise{logi.num_components()};
    ctx.at_most("minibatch(N) returns the full gradient", (sample_gradient(logi, xl, full, 1, 0.1, s) - truth).norm(),
                0.0);
  }

  // Hessian estimates: cap and symmetry over 100 unit probes.
  {
    double cap = -1.0, sym = 0.0;
    struct HCase {
      const ProblemOracle* p;
      HessianModel model;
      double M_H;
    };
    const HCase hcases[] = {{&rosen, ExactCappedHessian{50.0}, 50.0},
                            {&rosen, PerturbedHessian{50.0, 20.0}, 50.0},
                            {&quad, PerturbedHessian{5.0, 3.0}, 5.0},
                            {&logi, ExactCappedHessian{0.2}, 0.2}};
    for (const HCase& hc : hcases) {
      NoiseModel nm;
      nm.hessian = hc.model;
      RngStream hs(5, StreamPurpose::hessian_perturbation);
      Vector x(static_cast<Eigen::Index>(hc.p->dim()));
      for (auto& v : x) v = 2.0 * rng.uniform() - 1.0;
      const HessianEstimate h = sample_hessian(*hc.p, x, nm, hs);
      for (int i = 0; i < 100; ++i) {
        Vector v = rng.normal_vector(hc.p->dim());
        v /= v.norm();
        const Vector u = rng.normal_vector(hc.p->dim());
        cap = std::max(cap, h.apply(v).norm() - hc.M_H * (1.0 + 1e-10));
        sym = std::max(sym, std::abs(u.dot(h.apply(v)) - v.dot(h.apply(u))) / (u.norm() * std::max(1.0, hc.M_H)));
      }
    }
    ctx.at_most("Hessian estimates respect M_H on 100 unit probes", cap, 0.0);
    ctx.at_most("Hessian estimates symmetric", sym, 1e-10);

    Matrix A(2, 2);
    A << 1.0, 0.0, 0.0, 4.0;
    const QuadraticProblem d14(A, Vector::Zero(2));
    NoiseModel nm;
    nm.hessian = ExactCappedHessian{2.0};
    RngStream hs(5, StreamPurpose::hessian_perturbation);
    const Vector e2 = Vector::Unit(2, 1);
    Vector want(2);
    want << 0.0, 2.0;
    ctx.at_most("capped Hessian of diag(1,4) with M_H = 2 scales by 0.5",
                (sample_hessian(d14, Vector::Zero(2), nm, hs).apply(e2) - want).norm(), 1e-15);
  }
}

// ---------------------------------------------------------------------------

void suite_tuning(SuiteContext& ctx) {
  const double G = 1.5644;
  GridSpec spec;
  for (int i = 0; i <= 7; ++i) spec.lambdas.push_back(-1.0 + i / 7.0);
  spec.a_values = {2.0, 4.0};
  spec.b_values = {1.0, 3.0};
  const Grid grid = build_grid(G, spec);

  auto near = [&](const std::string& what, double computed, double reference) {
    ctx.at_most(what + fmt(" = %.6f vs reference %.6g", computed, reference), std::abs(computed - reference), 1e-4,
                "agreement to four decimal places");
  };
  near("gamma1 = 4/G", std::exp2(2.0) / G, 2.5568);
  near("gamma1 = 16/G", std::exp2(4.0) / G, 10.2274);
  near("gamma2 = 1/(2G)", 1.0 / (std::exp2(1.0) * G), 0.3196);
  near("gamma2 = 1/(8G)", 1.0 / (std::exp2(3.0) * G), 0.07990);
  near("SG range lower end", grid.sg_min, 0.00799);
  near("SG range upper end", grid.sg_max, 10.2275);
  ctx.check("fairness: |SG grid| = |TRish grid| = 32", grid.sg_stepsizes.size() == grid.trish.size() &&
                                                             grid.trish.size() == 32,
            static_cast<double>(grid.sg_stepsizes.size()), 32.0);

  // Echo format.
  LeaderboardEntry echo{Algorithm::trish, {std::pow(10.0, -5.0 / 7.0), 16.0 / G, 1.0 / (8.0 * G)}, 0.0, 0};
  const std::string text = format_setting(echo);
  ctx.check("setting echo has the form (alpha, gamma1, gamma2)",
            std::regex_match(text, std::regex(R"(\(\d+\.\d{4}, \d+\.\d{4}, \d+\.\d{4}\))")), 0.0, 0.0, text);

  // Known optimum: SG on 0.5 x'(L I)x - b'x with alpha = 1/L lands on the minimizer in one step.
  const double L = 2.0;
  const QuadraticProblem iso(L * Matrix::Identity(4, 4), Vector::Ones(4));
  Grid sg_grid;
  sg_grid.sg_stepsizes = {0.1, 0.25, 0.5, 0.75, 0.9};
  TrishConfig base;
  base.iterations = 5;
  const auto seeds = seed_range(1, 3);
  const TuneResult r = tune(iso, Algorithm::sg, sg_grid, seeds, base);
  ctx.at_most("tune selects alpha = 1/L_g on an isotropic quadratic", std::abs(r.best.setting.alpha - 1.0 / L), 0.0);

  Grid single;
  single.sg_stepsizes = {0.3};
  ctx.at_most("single-setting grid returns that setting",
              std::abs(tune(iso, Algorithm::sg, single, seeds, base).best.setting.alpha - 0.3), 0.0);

  // Permutation invariance on a small TRish grid.
  const QuadraticProblem q = make_quadratic(5, 1.0, 10.0, 4);
  GridSpec small;
  small.lambdas = {-2.0, -1.5, -1.0};
  small.a_values = {0.0, 1.0};
  small.b_values = {0.0, 1.0};
  Grid tg = build_grid(2.0, small);
  TrishConfig tb;
  tb.iterations = 30;
  tb.noise.gradient = BoundedNoise{0.1};
  const TuneResult fwd = tune(q, Algorithm::trish, tg, seeds, tb);
  std::reverse(tg.trish.begin(), tg.trish.end());
  const TuneResult rev = tune(q, Algorithm::trish, tg, seeds, tb);
  bool same = fwd.leaderboard.size() == rev.leaderboard.size();
  for (std::size_t i = 0; same && i < fwd.leaderboard.size(); ++i) {
    same = fwd.leaderboard[i].setting.alpha == rev.leaderboard[i].setting.alpha &&
           fwd.leaderboard[i].setting.gamma1 == rev.leaderboard[i].setting.gamma1 &&
           fwd.leaderboard[i].setting.gamma2 == rev.leaderboard[i].setting.gamma2;
  }
  ctx.check("tune is invariant to grid order", same, same ? 0.0 : 1.0, 0.0);
}

}  // namespace trish::detail
