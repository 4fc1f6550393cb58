#include <gtest/gtest.h>

#include <cmath>

#include "trish/errors.hpp"
#include "trish/schedules.hpp"

namespace {

using trish::GammaSchedule;
using trish::StepsizeSchedule;

TEST(Stepsize, Values) {
  EXPECT_DOUBLE_EQ(trish::stepsize_at(StepsizeSchedule::diminishing(1, 1), 1), 0.5);
  EXPECT_DOUBLE_EQ(trish::stepsize_at(StepsizeSchedule::constant(0.1), 999), 0.1);
  EXPECT_DOUBLE_EQ(trish::stepsize_at(StepsizeSchedule::diminishing(2, 3), 7), 0.2);
}

TEST(Stepsize, Validation) {
  EXPECT_THROW(StepsizeSchedule::constant(0.0).validate(), trish::ConfigError);
  EXPECT_THROW(StepsizeSchedule::diminishing(-1, 1).validate(), trish::ConfigError);
}

TEST(Gammas, Values) {
  const auto ss = StepsizeSchedule::constant(0.1);
  auto g = trish::gammas_at(GammaSchedule::merging(1, 1), ss, 1);
  EXPECT_DOUBLE_EQ(g.gamma1, 1.0);
  EXPECT_DOUBLE_EQ(g.gamma2, 0.95);
  g = trish::gammas_at(GammaSchedule::merging(2, 0), StepsizeSchedule::diminishing(3, 1), 5);
  EXPECT_DOUBLE_EQ(g.gamma1, 2.0);
  EXPECT_DOUBLE_EQ(g.gamma2, 2.0);
  g = trish::gammas_at(GammaSchedule::constant(10, 1), ss, 42);
  EXPECT_DOUBLE_EQ(g.gamma1, 10.0);
  EXPECT_DOUBLE_EQ(g.gamma2, 1.0);
}

TEST(Gammas, OrderEnforced) { EXPECT_THROW(trish::gammas_at(GammaSchedule::constant(1, 2), StepsizeSchedule::constant(0.1), 1), trish::ConfigError); }

TEST(StepsizeRule, Basic) {
  EXPECT_TRUE(trish::validate_stepsize(0.2, 1, 1, 1, 0, trish::BasicStepsizeRule{}));
  EXPECT_FALSE(trish::validate_stepsize(0.3, 1, 1, 1, 0, trish::BasicStepsizeRule{}));
  EXPECT_DOUBLE_EQ(trish::max_basic_stepsize(1, 1, 1, 0), 0.25);
}

TEST(StepsizeRule, Merging) {
  EXPECT_TRUE(trish::validate_stepsize(0.1, 1, 0.95, 0.4, 0.0, trish::MergingStepsizeRule{1}));
  EXPECT_FALSE(trish::validate_stepsize(0.1, 1, 0.9, 0.4, 0.0, trish::MergingStepsizeRule{1}));
  EXPECT_FALSE(trish::validate_stepsize(0.1, 1, 0.95, 0.4, 0.6, trish::MergingStepsizeRule{1}));
}

TEST(StepsizeRule, StrictThrowsAdvisoryWarns) {
  EXPECT_THROW(trish::check_stepsize(0.3, 1, 1, 1, 0, trish::BasicStepsizeRule{}, trish::Strictness::strict),
               trish::ConfigError);
  EXPECT_FALSE(trish::check_stepsize(0.3, 1, 1, 1, 0, trish::BasicStepsizeRule{}, trish::Strictness::advisory));
}

}  // namespace
