#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <tuple>

#include "trish/errors.hpp"
#include "trish/harness.hpp"

namespace trish {

Grid build_grid(double G, const GridSpec& spec) {
  if (!(G > 0.0) || !std::isfinite(G)) throw ConfigError("build_grid: G must be positive");
  if (spec.lambdas.empty() || spec.a_values.empty() || spec.b_values.empty()) {
    throw ConfigError("build_grid: lambda, a and b sets must be non-empty");
  }
  Grid grid;
  for (double lambda : spec.lambdas)
    for (double a : spec.a_values)
      for (double b : spec.b_values)
        grid.trish.push_back({std::pow(10.0, lambda), std::exp2(a) / G, 1.0 / (std::exp2(b) * G)});

  const double lambda_min = *std::min_element(spec.lambdas.begin(), spec.lambdas.end());
  const double lambda_max = *std::max_element(spec.lambdas.begin(), spec.lambdas.end());
  const double a_max = *std::max_element(spec.a_values.begin(), spec.a_values.end());
  const double b_max = *std::max_element(spec.b_values.begin(), spec.b_values.end());
  grid.sg_min = 1.0 / (std::exp2(b_max) * G) * std::pow(10.0, lambda_min);
  grid.sg_max = std::exp2(a_max) / G * std::pow(10.0, lambda_max);

  const std::size_t count = grid.trish.size();
  const double lo = std::log10(grid.sg_min), hi = std::log10(grid.sg_max);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid.sg_stepsizes.push_back(std::pow(10.0, lo + (hi - lo) * t));
  }
  if (count > 1) {
    grid.sg_stepsizes.front() = grid.sg_min;
    grid.sg_stepsizes.back() = grid.sg_max;
  }
  return grid;
}

BaselineResult baseline_gradient_norm(const ProblemOracle& oracle, const NoiseModel& noise, long K,
                                      std::uint64_t seed, const std::optional<Vector>& initial_point) {
  if (K < 1) throw ConfigError("baseline run needs K >= 1");
  SgConfig c;
  c.stepsizes = StepsizeSchedule::constant(0.1);
  c.noise = noise;
  c.iterations = K;
  c.seed = seed;
  c.initial_point = initial_point;
  const Trajectory t = run_sg(oracle, c);

  double sum = 0.0;
  long n = 0;
  for (const auto& r : t.records) {
    if (r.k == 0) continue;
    sum += r.g_norm;
    ++n;
  }
  const double mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
  if (!t.ok()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", mean);
    throw Error("baseline SG run failed after " + std::to_string(n) + " iterations (" + t.message +
                "); partial mean gradient norm " + buf);
  }
  if (mean == 0.0) std::cerr << "warning: baseline gradient norm G is 0; the tuning grid is undefined\n";
  return {mean, n};
}

namespace {

auto rank_key(const LeaderboardEntry& e) {
  const double g1 = std::isnan(e.setting.gamma1) ? 0.0 : e.setting.gamma1;
  const double g2 = std::isnan(e.setting.gamma2) ? 0.0 : e.setting.gamma2;
  return std::make_tuple(e.mean_validation, e.setting.alpha, g1, g2);
}

}  // namespace

TuneResult tune(const ProblemOracle& oracle, Algorithm algorithm, const Grid& grid,
                const std::vector<std::uint64_t>& seeds, const TrishConfig& base) {
  if (seeds.empty()) throw ConfigError("tune: no seeds");
  std::vector<TrishSetting> settings;
  if (algorithm == Algorithm::sg) {
    for (double a : grid.sg_stepsizes) settings.push_back({a, std::nan(""), std::nan("")});
  } else {
    settings = grid.trish;
  }
  if (settings.empty()) throw ConfigError("tune: empty grid");

  TuneResult result;
  for (const TrishSetting& s : settings) {
    LeaderboardEntry e{algorithm, s};
    double total = 0.0;
    for (std::uint64_t seed : seeds) {
      TrishConfig c = base;
      c.seed = seed;
      c.stepsizes = StepsizeSchedule::constant(s.alpha);
      if (algorithm != Algorithm::sg) c.gammas = GammaSchedule::constant(s.gamma1, s.gamma2);
      const Trajectory t = run_algorithm(oracle, algorithm, c);
      double v = std::numeric_limits<double>::infinity();
      if (t.ok()) {
        v = oracle.validation_value(t.final_point);
        if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
      }
      if (!std::isfinite(v)) ++e.diverged_runs;
      total += v;
    }
    e.mean_validation = total / static_cast<double>(seeds.size());
    result.leaderboard.push_back(e);
  }
  std::sort(result.leaderboard.begin(), result.leaderboard.end(),
            [](const LeaderboardEntry& x, const LeaderboardEntry& y) { return rank_key(x) < rank_key(y); });
  if (!std::isfinite(result.leaderboard.front().mean_validation)) {
    throw Error("tune: every setting diverged for " + std::string(to_string(algorithm)));
  }
  result.best = result.leaderboard.front();
  return result;
}

std::string format_setting(const LeaderboardEntry& entry) {
  char buf[128];
  if (entry.algorithm == Algorithm::sg) {
    std::snprintf(buf, sizeof buf, "%.4f", entry.setting.alpha);
  } else {
    std::snprintf(buf, sizeof buf, "(%.4f, %.4f, %.4f)", entry.setting.alpha, entry.setting.gamma1,
                  entry.setting.gamma2);
  }
  return buf;
}

}  // namespace trish
