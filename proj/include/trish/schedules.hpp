#pragma once

// Stepsize and radius-parameter sequences, plus the stepsize preconditions of the
// per-iteration decrease bounds.

#include <functional>
#include <string>
#include <variant>

namespace trish {

struct ConstantStepsize {
  double alpha;
};
/// alpha_k = a / (b + k)
struct DiminishingStepsize {
  double a;
  double b;
};
struct CustomStepsize {
  std::function<double(long)> alpha;
  std::string label = "custom";
};

struct StepsizeSchedule {
  std::variant<ConstantStepsize, DiminishingStepsize, CustomStepsize> kind;

  static StepsizeSchedule constant(double alpha);
  static StepsizeSchedule diminishing(double a, double b);

  /// Throws ConfigError for nonpositive parameters.
  void validate() const;
  bool is_diminishing() const noexcept { return std::holds_alternative<DiminishingStepsize>(kind); }
  std::string describe() const;
};

/// alpha_k for k >= 1.
double stepsize_at(const StepsizeSchedule& schedule, long k);

struct ConstantGammas {
  double gamma1;
  double gamma2;
};
/// gamma_{2,k} = gamma1 (1 - eta alpha_k / 2)
struct MergingGammas {
  double gamma1;
  double eta;
};
struct CustomGammas {
  std::function<std::pair<double, double>(long, double)> gammas;  // (k, alpha_k) -> (g1, g2)
  std::string label = "custom";
};

struct GammaSchedule {
  std::variant<ConstantGammas, MergingGammas, CustomGammas> kind;

  static GammaSchedule constant(double gamma1, double gamma2);
  static GammaSchedule merging(double gamma1, double eta);

  void validate() const;
  std::string describe() const;
};

struct Gammas {
  double gamma1;
  double gamma2;
};

/// Throws ConfigError when the resulting pair violates 0 < gamma2 <= gamma1.
Gammas gammas_at(const GammaSchedule& schedule, const StepsizeSchedule& stepsizes, long k);

struct BasicStepsizeRule {};
struct MergingStepsizeRule {
  double eta;
};
using StepsizeRule = std::variant<BasicStepsizeRule, MergingStepsizeRule>;

/// Basic: alpha <= g2 / (4 g1^2 (L_g + M_H)).
/// Merging additionally: alpha <= 1/(6 eta + 2 g1 (L_g + M_H)), M_H <= eta/(2 g1),
/// and g1 - g2 = eta g1 alpha / 2 (to 1e-12).
bool validate_stepsize(double alpha, double gamma1, double gamma2, double L_g, double M_H, const StepsizeRule& rule);

enum class Strictness { advisory, strict };

/// Advisory logs a warning to stderr and returns the verdict; strict throws ConfigError on failure.
bool check_stepsize(double alpha, double gamma1, double gamma2, double L_g, double M_H, const StepsizeRule& rule,
                    Strictness strictness);

/// Largest constant stepsize admitted by the basic rule.
double max_basic_stepsize(double gamma1, double gamma2, double L_g, double M_H);

}  // namespace trish
