#include <gtest/gtest.h>

#include <cmath>

#include "trish/bounds.hpp"
#include "trish/errors.hpp"

namespace b = trish::bounds;

namespace {

TEST(NonconvexFixed, DirectSubstitution) {
  EXPECT_NEAR(b::nonconvex_fixed_bound(10, 1, 1, 0.1, 1, 1, 0), 15.0, 1e-12);
  EXPECT_NEAR(b::nonconvex_fixed_bound(1000000000, 1, 1, 0.1, 0, 1, 0), 0.0, 1e-6);
  EXPECT_NEAR(b::nonconvex_fixed_bound(1000000000, 1, 1, 0.1, 1, 0, 0), 7.0, 1e-12);
}

TEST(PlFixed, ThetaAndEnvelope) {
  EXPECT_NEAR(b::pl_fixed_theta(1, 1, 1, 1), 3.5, 1e-15);
  EXPECT_DOUBLE_EQ(b::pl_fixed_envelope(1, 1, 1, 0.1, 1, 1, 10), 10.0);
  EXPECT_NEAR(b::pl_fixed_envelope(100000, 1, 1, 0.1, 1, 1, 10), 3.5, 1e-9);
  EXPECT_NEAR(b::pl_fixed_envelope(3, 1, 1, 0.4, 0, 1, 10), 10 * 0.9 * 0.9, 1e-12);
  EXPECT_THROW(b::pl_fixed_envelope(3, 1, 1, 5.0, 1, 1, 10), trish::ConfigError);
}

TEST(PlSublinear, MergingDelta2) {
  // eta = 1, gamma1 = 1, L_g + M_H = 2, M_g = 1
  const auto k = b::pl_sublinear_constants(10, 20, 1, 1, 1, 1, 1.5, 0.5, 1, 0);
  EXPECT_NEAR(k.delta2, 2.5, 1e-15);
}

TEST(PlSublinear, FixedGammaConstants) {
  const auto k = b::pl_sublinear_fixed_gamma_constants(8, 1, 1, 1, 1, 1, 0);
  EXPECT_NEAR(k.delta1, 0.25, 1e-15);
  EXPECT_NEAR(k.delta2, 7.0 / 8.0, 1e-15);
  EXPECT_NEAR(k.phi, 64 * 7.0 / 8.0, 1e-12);  // delta1 a - 1 = 1
  const auto z = b::pl_sublinear_fixed_gamma_constants(8, 3, 1, 1, 0, 1, 5);
  EXPECT_NEAR(z.phi, 4 * 5.0, 1e-12);
  EXPECT_NEAR(b::pl_sublinear_fixed_gamma_envelope(7, 8, 3, 1, 1, 0, 1, 5), 20.0 / 10.0, 1e-12);
}

TEST(PlSublinear, GapDominantPhi) {
  const auto k = b::pl_sublinear_fixed_gamma_constants(8, 1, 1, 1, 1e-6, 1, 100);
  EXPECT_NEAR(k.phi, 200.0, 1e-9);
}

TEST(Geometric, Constants) {
  const auto k = b::pl_geometric_constants(1, 1, 0.8, 1, 1, 0.5, 1);
  EXPECT_NEAR(k.rho, 0.9, 1e-15);
  EXPECT_NEAR(k.kappa2, 7.0 / 8.0, 1e-15);
  EXPECT_GE(k.omega, 7.0 - 1e-12);
  EXPECT_DOUBLE_EQ(b::pl_geometric_envelope(1, 1, 1, 0.8, 1, 1, 0.5, 1), k.omega);
}

TEST(Complexity, ParameterCheck) {
  EXPECT_TRUE(b::complexity_params_check(0.99, 0.99, 0.99, 0.01, 0.01));
  const double l = 0.99, m = 0.01;
  const double direct = l * l * l * l - m / l - m / (l * l) - 2.0 / (3.0 * l * l * l);  // 0.253219
  EXPECT_NEAR(b::complexity_params_lhs(l, l, l, m, m), direct, 1e-15);
  EXPECT_NEAR(direct, 0.2532, 1e-4);
  EXPECT_FALSE(b::complexity_params_check(0.5, 0.5, 0.5, 0.01, 0.01));
  EXPECT_NEAR(b::complexity_params_lhs(1, 1, 1 - 1e-9, 0, 0), 1.0 / 3.0, 1e-8);
}

TEST(Complexity, Budget) {
  EXPECT_EQ(b::complexity_budget(1, 1, 1), 3);
  EXPECT_EQ(b::complexity_budget(0.25, 1, 1), 24);
  EXPECT_EQ(b::complexity_budget(0.01, 3, 0), 0);
  EXPECT_NEAR(b::complexity_decrease(0.25, 1), 0.125 / 3.0, 1e-15);
}

}  // namespace
