#pragma once

// Trajectory export, the grid-tuning protocol and the experiment runner.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "trish/config.hpp"
#include "trish/optimizer.hpp"

namespace trish {

/// k,f,grad_norm_true,g_norm,delta,case,model_dec,cauchy_dec,cg_iters,upsilon,cost_units,wall_ns
inline constexpr const char* kCsvHeader =
    "k,f,grad_norm_true,g_norm,delta,case,model_dec,cauchy_dec,cg_iters,upsilon,cost_units,wall_ns";

/// Fields that do not apply to a row are left empty. Reals use %.17g.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

/// Throws Error naming the path on I/O failure.
void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path);

/// "<algorithm>_seed<seed>.csv"
std::string trajectory_filename(const Trajectory& trajectory);

struct TrishSetting {
  double alpha;
  double gamma1;
  double gamma2;
};

struct Grid {
  std::vector<TrishSetting> trish;
  std::vector<double> sg_stepsizes;  // ascending, same count as `trish`
  double sg_min = 0.0;
  double sg_max = 0.0;
};

/// Cartesian product over (lambda, a, b) plus a log-uniform SG list over
/// [min gamma2 * 10^{min lambda}, max gamma1 * 10^{max lambda}].
Grid build_grid(double G, const GridSpec& spec);

struct BaselineResult {
  double G;
  long iterations;
};

/// Mean |g_k| over an SG run with alpha = 0.1. Warns on stderr when the result is 0;
/// throws Error carrying the partial mean if the run diverges.
BaselineResult baseline_gradient_norm(const ProblemOracle& oracle, const NoiseModel& noise, long K,
                                      std::uint64_t seed, const std::optional<Vector>& initial_point = std::nullopt);

struct LeaderboardEntry {
  Algorithm algorithm;
  TrishSetting setting;  // SG entries carry NaN gammas
  double mean_validation = std::numeric_limits<double>::infinity();
  int diverged_runs = 0;
};

struct TuneResult {
  LeaderboardEntry best;
  std::vector<LeaderboardEntry> leaderboard;  // best first
};

/// Runs each setting on every seed and ranks by mean final validation value; a run that does not
/// complete counts as +inf. Ties go to smaller alpha, then smaller gamma1, then smaller gamma2.
/// Throws Error when every setting diverged.
TuneResult tune(const ProblemOracle& oracle, Algorithm algorithm, const Grid& grid,
                const std::vector<std::uint64_t>& seeds, const TrishConfig& base);

/// "(alpha, gamma1, gamma2)" with four decimals, or "alpha" for SG.
std::string format_setting(const LeaderboardEntry& entry);

struct ExperimentResult {
  std::vector<std::filesystem::path> files;
  int incomplete_runs = 0;  // diverged or non-finite
};

/// Writes one CSV per (algorithm, seed), including partial traces of runs that stopped early.
ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace trish
