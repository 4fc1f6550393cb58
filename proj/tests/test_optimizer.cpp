#include <gtest/gtest.h>

#include <cmath>

#include "trish/errors.hpp"
#include "trish/optimizer.hpp"
#include "trish/problems.hpp"

namespace {

using namespace trish;

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

TEST(TrishStep, ZeroGradientStaysPut) {
  const Vector x = v2(1, 2);
  StepDiagnostics d;
  const Vector next = trish_step(x, v2(0, 0), HessianEstimate::zero(2), 0.1, 1, 1, SteihaugSolver{}, &d);
  EXPECT_EQ(next, x);
  EXPECT_TRUE(d.zero_gradient);
}

TEST(TrishStep, BreakpointAndCase1) {
  Vector next = trish_step(v2(0, 0), v2(1, 0), HessianEstimate::zero(2), 0.1, 1, 1, SteihaugSolver{});
  EXPECT_NEAR((next - v2(-0.1, 0)).norm(), 0.0, 1e-15);
  next = trish_step(v2(0, 0), v2(0.05, 0), HessianEstimate::zero(2), 0.1, 10, 1, SteihaugSolver{});
  EXPECT_NEAR((next - v2(-0.05, 0)).norm(), 0.0, 1e-15);
}

QuadraticProblem unit_quadratic() { return QuadraticProblem(Matrix::Identity(2, 2), v2(-1, -2)); }

TEST(Sg, SingleStep) {
  SgConfig c;
  c.stepsizes = StepsizeSchedule::constant(0.1);
  c.iterations = 1;
  c.initial_point = v2(0, 0);
  const auto t = run_sg(unit_quadratic(), c);
  EXPECT_NEAR((t.final_point - v2(-0.1, -0.2)).norm(), 0.0, 1e-15);
  EXPECT_EQ(t.records.size(), 2u);
  EXPECT_EQ(t.records[1].cost_units, 1);
}

TEST(Sg, DecreasesOnQuadraticWithoutNoise) {
  const auto q = make_quadratic(6, 1, 5, 3);
  SgConfig c;
  c.stepsizes = StepsizeSchedule::constant(1.9 / 5.0);
  c.iterations = 50;
  const auto t = run_sg(q, c);
  for (std::size_t i = 1; i < t.records.size(); ++i) EXPECT_LT(t.records[i].f, t.records[i - 1].f);
}

TEST(Trish, ZeroIterations) {
  TrishConfig c;
  c.iterations = 0;
  const auto t = run_trish(make_quadratic(3, 1, 2, 1), c);
  EXPECT_EQ(t.records.size(), 1u);
  EXPECT_TRUE(t.ok());
}

TEST(Trish, DeterministicForSeed) {
  const auto q = make_quadratic(5, 1, 4, 2);
  TrishConfig c;
  c.noise.gradient = BoundedNoise{1};
  c.noise.hessian = PerturbedHessian{2, 0.5};
  c.iterations = 30;
  c.seed = 17;
  const auto a = run_trish(q, c), b = run_trish(q, c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 1; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].f, b.records[i].f);
    EXPECT_EQ(a.records[i].g_norm, b.records[i].g_norm) << i;
  }
  EXPECT_EQ(a.final_point, b.final_point);
  c.seed = 18;
  EXPECT_NE(run_trish(q, c).final_point, a.final_point);
}

TEST(Trish, ExactSolverDecreasesMonotonically) {
  const auto q = make_quadratic(5, 1, 4, 9);
  TrishConfig c;
  c.solver = ExactSolver{};
  c.stepsizes = StepsizeSchedule::constant(0.5);
  c.gammas = GammaSchedule::constant(1, 1);
  c.iterations = 30;
  c.initial_point = Vector::Constant(5, 3.0);
  const auto t = run_trish(q, c);
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    EXPECT_LE(t.records[i].f, t.records[i - 1].f + 1e-14);
    ASSERT_TRUE(t.records[i].upsilon.has_value());
    EXPECT_EQ(t.records[i].cost_units - t.records[i - 1].cost_units, 1 + 5);
  }
  EXPECT_NEAR(t.records.back().f, *q.constants().f_inf, 1e-8);
}

TEST(Trish, NormalizedRegimeUsesMiddleCase) {
  const auto q = make_quadratic(4, 1, 3, 4);
  TrishConfig c;
  c.stepsizes = StepsizeSchedule::constant(0.05);
  c.gammas = GammaSchedule::constant(1e6, 1e-6);
  c.noise.gradient = BoundedNoise{0.5};
  c.iterations = 40;
  c.initial_point = Vector::Constant(4, 2.0);
  const auto t = run_trish(q, c);
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    EXPECT_EQ(t.records[i].case_tag, 2);
    EXPECT_DOUBLE_EQ(t.records[i].delta, 0.05);
  }
}

TEST(Trish, SteihaugCostCountsProducts) {
  const auto q = make_quadratic(4, 1, 3, 4);
  TrishConfig c;
  c.iterations = 10;
  c.initial_point = Vector::Constant(4, 2.0);
  const auto t = run_trish(q, c);
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    EXPECT_EQ(t.records[i].cost_units - t.records[i - 1].cost_units, 1 + t.records[i].cg_iterations);
  }
  EXPECT_EQ(run_trish_first_order(q, c).records.back().cost_units, 10);
}

TEST(Trish, CollapsesToSgWithZeroHessian) {
  const auto lp = make_logistic(100, 4, 0.01, 1);
  const double gamma = 2.0, alpha = 0.05;
  TrishConfig c;
  c.stepsizes = StepsizeSchedule::constant(alpha);
  c.gammas = GammaSchedule::constant(gamma, gamma);
  c.noise.gradient = MiniBatchNoise{8};
  c.noise.hessian = ZeroHessian{};
  c.iterations = 100;
  c.seed = 5;
  SgConfig s;
  s.stepsizes = StepsizeSchedule::constant(gamma * alpha);
  s.noise = c.noise;
  s.iterations = 100;
  s.seed = 5;
  EXPECT_LE((run_trish(lp, c).final_point - run_sg(lp, s).final_point).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Trish, DivergenceIsReported) {
  const auto q = make_quadratic(3, 1, 10, 2);
  SgConfig s;
  s.stepsizes = StepsizeSchedule::constant(1.0);
  s.iterations = 500;
  s.initial_point = Vector::Ones(3);
  const auto t = run_sg(q, s);
  EXPECT_EQ(t.status, RunStatus::diverged);
  EXPECT_LT(t.records.size(), 501u);
}

TEST(Trish, ConfigValidation) {
  TrishConfig c;
  c.iterations = -1;
  EXPECT_THROW(c.validate(), ConfigError);
  c.iterations = 3;
  c.initial_point = Vector::Zero(2);
  EXPECT_THROW(run_trish(make_quadratic(3, 1, 2, 0), c), ConfigError);
}

}  // namespace
