#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "trish/errors.hpp"
#include "trish/harness.hpp"
#include "trish/problems.hpp"

#ifndef TRISH_TEST_DATA_DIR
#error "TRISH_TEST_DATA_DIR must be defined"
#endif

namespace {

using namespace trish;
using nlohmann::json;

json tiny_config() {
  return json::parse(R"({
    "problem": {"type": "quadratic", "n": 3, "lambda_min": 1, "lambda_max": 4, "seed": 1},
    "algorithm": "trish",
    "stepsize": {"type": "constant", "alpha": 0.05},
    "gammas": {"type": "constant", "gamma1": 2, "gamma2": 0.5},
    "noise": {"type": "bounded", "M_g": 0.5},
    "hessian": {"type": "exact_capped", "M_H": 2},
    "iterations": 2,
    "seed": 3,
    "stepsize_check": "off"
  })");
}

std::string strip_wall_ns(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  for (std::string line; std::getline(in, line);) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

std::string csv_for(const ExperimentConfig& cfg) {
  const auto oracle = make_problem(cfg.problem);
  std::ostringstream s;
  write_trajectory_csv(run_algorithm(*oracle, cfg.algorithms[0], config_for(cfg, cfg.algorithms[0], cfg.seeds[0])), s);
  return s.str();
}

TEST(Config, ParsesTinyConfig) {
  const auto cfg = parse_config(tiny_config());
  EXPECT_EQ(cfg.trish.iterations, 2);
  ASSERT_EQ(cfg.seeds.size(), 1u);
  EXPECT_EQ(cfg.seeds[0], 3u);
  EXPECT_TRUE(std::holds_alternative<QuadraticSpec>(cfg.problem));
}

TEST(Config, RejectsUnknownKeysWithLocation) {
  auto j = tiny_config();
  j["stepsize"]["alhpa"] = 0.1;
  try {
    parse_config(j);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("alhpa"), std::string::npos) << e.what();
  }
  j = tiny_config();
  j["extra"] = 1;
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, RejectsBadValues) {
  auto j = tiny_config();
  j["gammas"]["gamma2"] = 5;
  EXPECT_THROW(parse_config(j), ConfigError);
  j = tiny_config();
  j["algorithm"] = "newton";
  EXPECT_THROW(parse_config(j), ConfigError);
  j = tiny_config();
  j["iterations"] = -1;
  EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, StrictStepsizeCheck) {
  auto j = tiny_config();
  j["stepsize_check"] = "strict";
  const auto cfg = parse_config(j);
  const auto oracle = make_problem(cfg.problem);
  EXPECT_THROW(check_config_stepsize(cfg, *oracle), ConfigError);
}

TEST(Config, OutputDirectoryOverride) {
  auto cfg = parse_config(tiny_config());
  cfg.output_dir = "from_config";
  ::unsetenv("TRISH_OUTPUT_DIR");
  EXPECT_EQ(effective_output_dir(cfg), std::filesystem::path("from_config"));
  ::setenv("TRISH_OUTPUT_DIR", "/tmp/override", 1);
  EXPECT_EQ(effective_output_dir(cfg), std::filesystem::path("/tmp/override"));
  ::unsetenv("TRISH_OUTPUT_DIR");
}

TEST(Csv, HeaderAndRowCount) {
  const std::string csv = csv_for(parse_config(tiny_config()));
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kCsvHeader);
  int rows = 0;
  std::vector<std::string> ks;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    ks.push_back(line.substr(0, line.find(',')));
  }
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(ks, (std::vector<std::string>{"0", "1", "2"}));
}

TEST(Csv, MatchesGoldenFile) {
  const std::string got = strip_wall_ns(csv_for(parse_config(tiny_config())));
  std::ifstream f(std::filesystem::path(TRISH_TEST_DATA_DIR) / "golden_trish_seed3.csv");
  ASSERT_TRUE(f) << "golden file missing";
  std::stringstream want;
  want << f.rdbuf();
  EXPECT_EQ(got, want.str());
}

TEST(Csv, DeterministicModuloWallClock) {
  const auto cfg = parse_config(tiny_config());
  EXPECT_EQ(strip_wall_ns(csv_for(cfg)), strip_wall_ns(csv_for(cfg)));
}

TEST(Csv, UpsilonOnlyForExactSolver) {
  auto j = tiny_config();
  const std::string steihaug = csv_for(parse_config(j));
  j["solver"] = {{"type", "exact"}};
  const std::string exact = csv_for(parse_config(j));
  auto upsilon_field = [](const std::string& csv, int row) {
    std::istringstream in(csv);
    std::string line;
    for (int i = 0; i <= row; ++i) std::getline(in, line);
    std::vector<std::string> fields;
    std::stringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
    return fields.at(9);
  };
  EXPECT_EQ(upsilon_field(steihaug, 2), "");
  EXPECT_NE(upsilon_field(exact, 2), "");
}

TEST(Experiment, WritesOneFilePerAlgorithmAndSeed) {
  auto j = tiny_config();
  j["algorithm"] = {"trish", "sg"};
  j["seeds"] = {1, 2};
  j.erase("seed");
  const auto dir = std::filesystem::temp_directory_path() / "trish_experiment_test";
  std::filesystem::remove_all(dir);
  ::setenv("TRISH_OUTPUT_DIR", dir.c_str(), 1);
  std::ostringstream log;
  const auto res = run_experiment(parse_config(j), log);
  ::unsetenv("TRISH_OUTPUT_DIR");
  EXPECT_EQ(res.files.size(), 4u);
  EXPECT_EQ(res.incomplete_runs, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "sg_seed2.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Tuning, ReferenceGrid) {
  GridSpec spec;
  for (int i = 0; i <= 7; ++i) spec.lambdas.push_back(-1.0 + i / 7.0);
  spec.a_values = {2, 4};
  spec.b_values = {1, 3};
  const Grid g = build_grid(1.5644, spec);
  EXPECT_EQ(g.trish.size(), 32u);
  EXPECT_EQ(g.sg_stepsizes.size(), 32u);
  EXPECT_NEAR(g.sg_min, 0.00799, 1e-4);
  EXPECT_NEAR(g.sg_max, 10.2275, 1e-4);
  EXPECT_DOUBLE_EQ(g.sg_stepsizes.front(), g.sg_min);
  EXPECT_DOUBLE_EQ(g.sg_stepsizes.back(), g.sg_max);
  EXPECT_TRUE(std::is_sorted(g.sg_stepsizes.begin(), g.sg_stepsizes.end()));
}

TEST(Tuning, SelectsOptimalStepOnIsotropicQuadratic) {
  const QuadraticProblem q(2.0 * Matrix::Identity(3, 3), Vector::Ones(3));
  Grid g;
  g.sg_stepsizes = {0.1, 0.25, 0.5, 0.75, 0.9};
  g.trish.resize(5, TrishSetting{0.1, 1, 1});
  TrishConfig base;
  base.iterations = 5;
  base.initial_point = Vector::Zero(3);
  const auto r = tune(q, Algorithm::sg, g, {0}, base);
  EXPECT_DOUBLE_EQ(r.best.setting.alpha, 0.5);
  EXPECT_EQ(r.leaderboard.size(), 5u);
}

TEST(Tuning, SingleSettingAndEchoFormat) {
  const auto q = make_quadratic(3, 1, 2, 0);
  Grid g;
  g.trish = {TrishSetting{0.1, 2.0, 0.5}};
  g.sg_stepsizes = {0.1};
  TrishConfig base;
  base.iterations = 20;
  const auto r = tune(q, Algorithm::trish, g, {0, 1}, base);
  EXPECT_DOUBLE_EQ(r.best.setting.gamma1, 2.0);
  EXPECT_TRUE(std::regex_match(format_setting(r.best), std::regex(R"(\(\d+\.\d{4}, \d+\.\d{4}, \d+\.\d{4}\))")))
      << format_setting(r.best);
}

TEST(Tuning, AllDivergedIsAnError) {
  const auto q = make_quadratic(3, 1, 10, 0);
  Grid g;
  g.sg_stepsizes = {5.0};
  g.trish = {TrishSetting{0.1, 1, 1}};
  TrishConfig base;
  base.iterations = 200;
  base.initial_point = Vector::Ones(3);
  EXPECT_THROW(tune(q, Algorithm::sg, g, {0}, base), Error);
}

TEST(Tuning, BaselineIsDeterministicAndWarnsAtZero) {
  const auto q = make_quadratic(3, 1, 2, 0);
  NoiseModel nm;
  nm.gradient = BoundedNoise{1};
  EXPECT_EQ(baseline_gradient_norm(q, nm, 50, 4).G, baseline_gradient_norm(q, nm, 50, 4).G);
  EXPECT_LE(baseline_gradient_norm(q, NoiseModel{}, 10, 0, q.minimizer()).G, 1e-14);
}

}  // namespace
