// Acceptance run: executes every verification suite at full size and prints one line per criterion.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "trish/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;  // nullptr for the cross-suite Cauchy tally
};

const Criterion kCriteria[] = {
    {1, "radius rule cases, breakpoints and continuity", "radius"},
    {2, "TRish with H = 0 and equal gammas reproduces SG", "equivalence"},
    {3, "Cauchy-decrease contract over >= 1e4 audited steps", nullptr},
    {4, "exact TRS solver vs independent dual oracle", "trs-oracle"},
    {5, "fixed-parameter linear envelope (PL)", "pl-fixed"},
    {6, "merging-schedule sublinear envelope (PL)", "pl-merging"},
    {7, "geometric-noise linear envelope (PL)", "geometric"},
    {8, "nonconvex fixed-parameter gradient bound", "nonconvex-fixed"},
    {9, "second-order complexity property", "complexity"},
    {10, "tuning grid matches reference values", "tuning"},
    {11, "oracle and noise-model hygiene", "oracles"},
};

void print_failures(const trish::SuiteReport& r) {
  for (const auto& c : r.checks) {
    if (!c.passed) {
      std::printf("      failed: %s (statistic %.6g, threshold %.6g) %s\n", c.name.c_str(), c.statistic, c.threshold,
                  c.detail.c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  std::map<std::string, trish::SuiteReport> reports;
  long steps = 0, violations = 0;
  for (const auto& name : trish::suite_names()) {
    reports[name] = trish::verify(name, quick);
    steps += reports[name].cauchy_steps;
    violations += reports[name].cauchy_violations;
  }

  int failed = 0;
  for (const auto& c : kCriteria) {
    bool ok = false;
    std::string info;
    if (c.suite == nullptr) {
      ok = steps >= 10000 && violations == 0;
      info = std::to_string(steps) + " steps, " + std::to_string(violations) + " violations";
    } else {
      const auto& r = reports.at(c.suite);
      ok = r.passed();
      long n_ok = 0;
      for (const auto& ch : r.checks) n_ok += ch.passed ? 1 : 0;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%ld/%zu checks, %.2f s", n_ok, r.checks.size(), r.seconds);
      info = buf;
    }
    std::printf("C%-2d %s  %s  [%s]\n", c.id, ok ? "PASS" : "FAIL", c.title, info.c_str());
    if (!ok && c.suite != nullptr) print_failures(reports.at(c.suite));
    failed += ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(kCriteria)) - failed, std::size(kCriteria));
  return failed == 0 ? 0 : 1;
}
