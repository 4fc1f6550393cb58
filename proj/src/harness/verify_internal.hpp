#pragma once

// Shared pieces of the verification suites.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "trish/verify.hpp"

namespace trish::detail {

struct SuiteContext {
  bool quick = false;
  SuiteReport* report = nullptr;
  CauchyAudit audit;

  void check(std::string name, bool passed, double statistic, double threshold, std::string detail = {});
  /// Pass iff statistic <= threshold.
  void at_most(std::string name, double statistic, double threshold, std::string detail = {});
};

/// Per-row mean and standard error of a trajectory statistic across seeds.
struct SeedStats {
  std::vector<double> mean;
  std::vector<double> se;
  long runs = 0;
  long incomplete = 0;  // runs that diverged or aborted
};

/// Runs `config` once per seed and accumulates `stat(record)` per row. Every step goes through the audit
/// and the optional extra observer.
SeedStats run_seeds(const ProblemOracle& oracle, TrishConfig config, const std::vector<std::uint64_t>& seeds,
                    const std::function<double(const IterationRecord&)>& stat, CauchyAudit& audit,
                    const StepObserver& extra = {});

/// Largest mean - (envelope + 3 se) over rows; row r is compared with envelope(r + 1).
struct EnvelopeResult {
  double worst_excess;
  long worst_row;
  double worst_mean;
  double worst_envelope;
  double tightest_ratio;  // max of mean / (envelope + 3 SE) over k >= 2, where the start no longer pins it to 1
  long tightest_row;
};
EnvelopeResult compare_envelope(const SeedStats& stats, const std::function<double(long)>& envelope);

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count);

std::string fmt(const char* format, ...);

void suite_radius(SuiteContext& ctx);
void suite_equivalence(SuiteContext& ctx);
void suite_lemmas(SuiteContext& ctx);
void suite_trs_oracle(SuiteContext& ctx);
void suite_oracles(SuiteContext& ctx);
void suite_tuning(SuiteContext& ctx);
void suite_pl_fixed(SuiteContext& ctx);
void suite_pl_merging(SuiteContext& ctx);
void suite_pl_sublinear(SuiteContext& ctx);
void suite_geometric(SuiteContext& ctx);
void suite_nonconvex_fixed(SuiteContext& ctx);
void suite_complexity(SuiteContext& ctx);

}  // namespace trish::detail
