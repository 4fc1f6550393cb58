#pragma once

// Verification suites: each returns a machine-readable report of named checks.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trish/optimizer.hpp"

namespace trish {

struct Check {
  std::string name;
  bool passed = false;
  double statistic = 0.0;  // observed effect (excess over a bound, error, count ...)
  double threshold = 0.0;  // value the statistic was compared against
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  bool quick = false;
  std::vector<Check> checks;
  long cauchy_steps = 0;  // steps audited against the Cauchy-decrease contract
  long cauchy_violations = 0;
  double seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Per-step audit of the Cauchy-decrease contract, recomputing every quantity from (g, H, s).
/// A step violates it when
///   -m(s) < -m(cauchy) - 1e-10,  -m(s) < 0.5 |g| min{delta, |g|/B} - 1e-10,
///   -m(cauchy) < min{delta |g| - 0.5 delta^2 B, 0.5 |g|^2/B} - 1e-10 (B > 0), or |s| > delta (1 + 1e-12).
class CauchyAudit {
 public:
  void record(const Vector& g, const HessianEstimate& h, const Vector& s, double delta);
  StepObserver observer();

  long steps() const noexcept { return steps_; }
  long violations() const noexcept { return violations_; }
  double worst_shortfall() const noexcept { return worst_; }

 private:
  long steps_ = 0;
  long violations_ = 0;
  double worst_ = 0.0;
};

const std::vector<std::string>& suite_names();

/// Throws ConfigError for an unknown suite name.
SuiteReport verify(std::string_view suite, bool quick = false);

}  // namespace trish
