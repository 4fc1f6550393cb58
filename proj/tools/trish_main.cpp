// Command-line front end: run, tune, verify, baseline-g.
// Exit status: 0 success, 1 failure, 2 configuration error.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trish/errors.hpp"
#include "trish/harness.hpp"
#include "trish/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

int cmd_run(const std::string& path) {
  const trish::ExperimentConfig config = trish::load_config(path);
  const trish::ExperimentResult result = trish::run_experiment(config, std::cout);
  if (result.incomplete_runs > 0) {
    std::cerr << result.incomplete_runs << " run(s) did not complete\n";
    return kFail;
  }
  return kOk;
}

double resolve_G(const trish::ExperimentConfig& config, const trish::ProblemOracle& oracle, std::ostream& log) {
  const trish::TuningSpec& t = *config.tuning;
  if (t.G) return *t.G;
  const auto r = trish::baseline_gradient_norm(oracle, config.trish.noise, t.baseline_iterations, t.baseline_seed,
                                               config.trish.initial_point);
  log << "baseline SG (alpha = 0.1, " << r.iterations << " iterations): G = " << r.G << '\n';
  return r.G;
}

int cmd_baseline(const std::string& path) {
  trish::ExperimentConfig config = trish::load_config(path);
  if (!config.tuning) config.tuning = trish::TuningSpec{};
  config.tuning->G.reset();
  const auto oracle = trish::make_problem(config.problem);
  const double G = resolve_G(config, *oracle, std::cerr);
  std::printf("%.10g\n", G);
  return kOk;
}

int cmd_tune(const std::string& path) {
  const trish::ExperimentConfig config = trish::load_config(path);
  if (!config.tuning) throw trish::ConfigError("tune: config has no \"tuning\" section");
  const auto oracle = trish::make_problem(config.problem);
  const double G = resolve_G(config, *oracle, std::cout);
  if (!(G > 0.0)) throw trish::Error("tune: baseline gradient norm G must be positive");
  const trish::Grid grid = trish::build_grid(G, config.tuning->grid);
  std::cout << "grid: " << grid.trish.size() << " TRish settings, " << grid.sg_stepsizes.size()
            << " SG stepsizes in [" << grid.sg_min << ", " << grid.sg_max << "]\n";

  for (trish::Algorithm a : config.algorithms) {
    const trish::TuneResult r = trish::tune(*oracle, a, grid, config.seeds, trish::config_for(config, a, 0));
    std::cout << "\n" << trish::to_string(a) << " leaderboard (mean final validation value)\n";
    for (const auto& e : r.leaderboard) {
      std::cout << "  " << trish::format_setting(e) << "  " << e.mean_validation;
      if (e.diverged_runs > 0) std::cout << "  [" << e.diverged_runs << " diverged]";
      std::cout << '\n';
    }
    std::cout << trish::to_string(a) << " selected " << trish::format_setting(r.best) << '\n';
  }
  return kOk;
}

int cmd_verify(const std::string& suite, bool quick) {
  const trish::SuiteReport report = trish::verify(suite, quick);
  std::cout << report.to_json().dump(2) << '\n';
  return report.passed() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TRish stochastic trust-region optimizer"};
  app.require_subcommand(1);

  std::string config_path, suite;
  bool quick = false;
  auto* run = app.add_subcommand("run", "run an experiment and write one CSV per (algorithm, seed)");
  run->add_option("--config", config_path, "JSON experiment config")->required();
  auto* tune = app.add_subcommand("tune", "grid-tune stepsizes and radius parameters");
  tune->add_option("--config", config_path, "JSON experiment config")->required();
  auto* base = app.add_subcommand("baseline-g", "print the baseline gradient norm G");
  base->add_option("--config", config_path, "JSON experiment config")->required();
  auto* ver = app.add_subcommand("verify", "run a verification suite and print a JSON report");
  ver->add_option("--suite", suite, "suite name")->required();
  ver->add_flag("--quick", quick, "smaller sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*tune) return cmd_tune(config_path);
    if (*base) return cmd_baseline(config_path);
    if (*ver) return cmd_verify(suite, quick);
  } catch (const trish::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kFail;
}
