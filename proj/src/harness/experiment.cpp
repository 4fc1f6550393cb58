#include <ostream>

#include "trish/errors.hpp"
#include "trish/harness.hpp"

namespace trish {

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream& log) {
  const auto oracle = make_problem(config.problem);
  if (config.trish.initial_point && static_cast<std::size_t>(config.trish.initial_point->size()) != oracle->dim()) {
    throw ConfigError("initial_point has length " + std::to_string(config.trish.initial_point->size()) +
                      ", problem dimension is " + std::to_string(oracle->dim()));
  }
  check_config_stepsize(config, *oracle);

  const std::filesystem::path dir = effective_output_dir(config);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

  ExperimentResult result;
  for (Algorithm a : config.algorithms) {
    for (std::uint64_t seed : config.seeds) {
      const Trajectory t = run_algorithm(*oracle, a, config_for(config, a, seed));
      const auto path = dir / trajectory_filename(t);
      write_trajectory_csv(t, path);
      log << path.string() << ": " << to_string(t.status) << ", " << t.records.size() - 1 << " iterations, final f "
          << t.records.back().f;
      if (!t.ok()) {
        log << " (" << t.message << ")";
        ++result.incomplete_runs;
      }
      log << '\n';
      result.files.push_back(path);
    }
  }
  return result;
}

}  // namespace trish
