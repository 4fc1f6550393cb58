#include <gtest/gtest.h>

#include <cmath>

#include "trish/errors.hpp"
#include "trish/subproblem.hpp"

namespace {

using trish::HessianEstimate;
using trish::Matrix;
using trish::RadiusCase;
using trish::Vector;

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(Radius, ThreeCases) {
  auto r = trish::radius(0.05, 0.1, 10, 1);
  EXPECT_DOUBLE_EQ(r.delta, 0.05);
  EXPECT_EQ(r.tag, RadiusCase::case1);
  r = trish::radius(0.5, 0.1, 10, 1);
  EXPECT_DOUBLE_EQ(r.delta, 0.1);
  EXPECT_EQ(r.tag, RadiusCase::case2);
  r = trish::radius(4, 0.1, 10, 1);
  EXPECT_DOUBLE_EQ(r.delta, 0.4);
  EXPECT_EQ(r.tag, RadiusCase::case3);
}

TEST(Radius, BreakpointsBelongToMiddleCase) {
  auto r = trish::radius(0.1, 0.1, 10, 1);
  EXPECT_EQ(r.tag, RadiusCase::case2);
  EXPECT_NEAR(r.delta, 10 * 0.1 * 0.1, 1e-15);
  r = trish::radius(1.0, 0.1, 10, 1);
  EXPECT_EQ(r.tag, RadiusCase::case2);
  EXPECT_NEAR(r.delta, 1 * 0.1 * 1.0, 1e-15);
}

TEST(Radius, ZeroGradientAndBadParameters) {
  EXPECT_EQ(trish::radius(0.0, 0.1, 2, 1).delta, 0.0);
  EXPECT_THROW(trish::radius(1.0, 0.1, 1, 2), trish::ConfigError);
  EXPECT_THROW(trish::radius(1.0, 0.0, 1, 1), trish::ConfigError);
}

TEST(Model, Values) {
  const auto I = HessianEstimate::from_matrix(Matrix::Identity(2, 2));
  EXPECT_EQ(trish::model_value(v2(1, 0), I, v2(0, 0)), 0.0);
  EXPECT_DOUBLE_EQ(trish::model_value(v2(1, 0), I, v2(-1, 0)), -0.5);
  EXPECT_DOUBLE_EQ(trish::model_value(v2(1, 0), HessianEstimate::zero(2), v2(-2, 0)), -2.0);
}

TEST(Cauchy, Examples) {
  const auto I = HessianEstimate::from_matrix(Matrix::Identity(2, 2));
  EXPECT_TRUE(trish::cauchy_point(v2(1, 0), I, 10).isApprox(v2(-1, 0)));
  EXPECT_TRUE(trish::cauchy_point(v2(1, 0), HessianEstimate::zero(2), 2).isApprox(v2(-2, 0)));
  const auto neg = HessianEstimate::from_matrix(diag2(-1, 1));
  EXPECT_TRUE(trish::cauchy_point(v2(1, 0), neg, 1).isApprox(v2(-1, 0)));
  EXPECT_THROW(trish::cauchy_point(v2(0, 0), I, 1), trish::DegenerateInput);
}

TEST(Cauchy, BoundsWithZeroCurvature) {
  EXPECT_DOUBLE_EQ(trish::cauchy_lower_bound(2.0, 0.5, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(trish::cauchy_lower_bound(2.0, 5.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(trish::cauchy_alternative_bound(2.0, 0.5, 0.0), 1.0);
}

TEST(Steihaug, LinearModelGoesToBoundary) {
  trish::CgExit why{};
  const auto step = trish::steihaug_cg(v2(1, 0), HessianEstimate::zero(2), 2, {3, 1e-10}, &why);
  EXPECT_TRUE(step.s.isApprox(v2(-2, 0)));
  EXPECT_TRUE(step.boundary_hit);
}

TEST(Steihaug, InteriorNewtonStep) {
  const auto step = trish::steihaug_cg(v2(3, 4), HessianEstimate::from_matrix(Matrix::Identity(2, 2)), 10);
  EXPECT_NEAR((step.s - v2(-3, -4)).norm(), 0.0, 1e-12);
  EXPECT_FALSE(step.boundary_hit);
  EXPECT_NEAR(step.model_decrease, 12.5, 1e-12);
}

TEST(Steihaug, NegativeCurvatureExit) {
  trish::CgExit why{};
  const auto step = trish::steihaug_cg(v2(1, 0), HessianEstimate::from_matrix(diag2(-1, 1)), 1, {}, &why);
  EXPECT_NEAR((step.s - v2(-1, 0)).norm(), 0.0, 1e-12);
  EXPECT_EQ(why, trish::CgExit::negative_curvature);
}

TEST(Steihaug, ZeroGradient) {
  const auto step = trish::steihaug_cg(v2(0, 0), HessianEstimate::from_matrix(diag2(-1, 1)), 1);
  EXPECT_EQ(step.s.norm(), 0.0);
  EXPECT_EQ(step.model_decrease, 0.0);
}

TEST(Steihaug, NeverWorseThanCauchyPoint) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 6;
    Matrix m(n, n);
    for (auto& x : m.reshaped()) x = nd(rng);
    m = 0.5 * (m + m.transpose()).eval();
    Vector g(n);
    for (auto& x : g) x = nd(rng);
    const auto h = HessianEstimate::from_matrix(m);
    const double delta = 0.1 + std::abs(nd(rng));
    const auto step = trish::steihaug_cg(g, h, delta);
    const Vector c = trish::cauchy_point(g, h, delta);
    EXPECT_LE(step.s.norm(), delta * (1 + 1e-12));
    EXPECT_GE(-trish::model_value(g, h, step.s), -trish::model_value(g, h, c) - 1e-10);
    EXPECT_GE(step.model_decrease, step.cauchy_bound - 1e-10);
  }
}

TEST(ExactTrs, InteriorAndBoundary) {
  auto sol = trish::exact_trs(v2(3, 4), Matrix::Identity(2, 2), 10);
  EXPECT_NEAR((sol.s - v2(-3, -4)).norm(), 0.0, 1e-12);
  EXPECT_NEAR(sol.upsilon, 0.0, 1e-12);
  sol = trish::exact_trs(v2(3, 4), Matrix::Identity(2, 2), 1);
  EXPECT_NEAR((sol.s - v2(-0.6, -0.8)).norm(), 0.0, 1e-10);
  EXPECT_NEAR(sol.upsilon, 4.0, 1e-10);
}

TEST(ExactTrs, HardCaseWithZeroGradient) {
  const auto sol = trish::exact_trs(v2(0, 0), diag2(-1, 2), 1);
  EXPECT_NEAR(std::abs(sol.s(0)), 1.0, 1e-10);
  EXPECT_NEAR(sol.s(1), 0.0, 1e-10);
  EXPECT_NEAR(sol.upsilon, 1.0, 1e-10);
  EXPECT_TRUE(sol.hard_case);
}

TEST(ExactTrs, RejectsAsymmetric) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(trish::exact_trs(v2(1, 0), m, 1), trish::InputError);
}

TEST(Kkt, Residuals) {
  auto r = trish::kkt_residuals(v2(3, 4), Matrix::Identity(2, 2), 10, v2(-3, -4), 0.0);
  EXPECT_NEAR(r.stationarity, 0.0, 1e-15);
  EXPECT_NEAR(r.psd_margin, 1.0, 1e-15);
  EXPECT_NEAR(r.complementarity, 0.0, 1e-15);
  r = trish::kkt_residuals(v2(3, 4), Matrix::Identity(2, 2), 1, v2(-0.6, -0.8), 4.0);
  EXPECT_LE(r.stationarity, 1e-12);
  EXPECT_NEAR(r.psd_margin, 5.0, 1e-12);
  EXPECT_LE(r.complementarity, 1e-12);
  r = trish::kkt_residuals(v2(3, 4), Matrix::Identity(2, 2), 1, v2(-0.5, -0.8), 4.0);
  EXPECT_GE(r.stationarity, 0.1 * 5.0 - 1e-12);
}

}  // namespace
