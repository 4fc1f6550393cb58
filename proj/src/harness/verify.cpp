#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "trish/errors.hpp"
#include "trish/simd.hpp"
#include "trish/subproblem.hpp"
#include "verify_internal.hpp"

namespace trish {

bool SuiteReport::passed() const {
  if (checks.empty() || cauchy_violations > 0) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["quick"] = quick;
  j["passed"] = passed();
  j["seconds"] = seconds;
  j["cauchy_steps"] = cauchy_steps;
  j["cauchy_violations"] = cauchy_violations;
  j["isa"] = std::string(simd::isa_name(simd::active().isa));
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    // JSON has no inf/nan; store those as strings.
    auto num = [](double v) -> nlohmann::json {
      if (std::isfinite(v)) return v;
      return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    };
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"statistic", num(c.statistic)},
                   {"threshold", num(c.threshold)},
                   {"detail", c.detail}});
  }
  return j;
}

void CauchyAudit::record(const Vector& g, const HessianEstimate& h, const Vector& s, double delta) {
  const double gn = g.norm();
  if (gn == 0.0) return;
  ++steps_;
  const double B = h.norm_bound();
  const Vector hs = h.apply(s);
  const double model_dec = -(g.dot(s) + 0.5 * s.dot(hs));

  // Cauchy decrease along -g/|g|: minimize -t|g| + 0.5 t^2 kappa over t in [0, delta].
  const Vector u = g / gn;
  const double kappa = u.dot(h.apply(u));
  const double t = kappa > 0.0 ? std::min(delta, gn / kappa) : delta;
  const double cauchy_dec = t * gn - 0.5 * t * t * kappa;

  const double guaranteed_dec = 0.5 * gn * (B > 0.0 ? std::min(delta, gn / B) : delta);
  double shortfall = std::max(cauchy_dec - model_dec, guaranteed_dec - model_dec);
  if (B > 0.0) {
    const double cauchy_floor = std::min(delta * gn - 0.5 * delta * delta * B, 0.5 * gn * gn / B);
    shortfall = std::max(shortfall, cauchy_floor - cauchy_dec);
  }
  const bool feasible = s.norm() <= delta * (1.0 + 1e-12);
  worst_ = std::max(worst_, shortfall);
  if (shortfall > 1e-10 || !feasible) ++violations_;
}

StepObserver CauchyAudit::observer() {
  return [this](const StepEvent& e) {
    if (e.diagnostics.zero_gradient) return;
    record(e.g, e.h, e.diagnostics.step.s, e.diagnostics.step.delta);
  };
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "lemmas",  "radius",    "equivalence",     "trs-oracle", "pl-fixed", "pl-merging", "pl-sublinear",
      "geometric", "nonconvex-fixed", "complexity", "oracles",    "tuning"};
  return names;
}

SuiteReport verify(std::string_view suite, bool quick) {
  using Fn = void (*)(detail::SuiteContext&);
  Fn fn = nullptr;
  if (suite == "lemmas") fn = detail::suite_lemmas;
  if (suite == "radius") fn = detail::suite_radius;
  if (suite == "equivalence") fn = detail::suite_equivalence;
  if (suite == "trs-oracle") fn = detail::suite_trs_oracle;
  if (suite == "pl-fixed") fn = detail::suite_pl_fixed;
  if (suite == "pl-merging") fn = detail::suite_pl_merging;
  if (suite == "pl-sublinear") fn = detail::suite_pl_sublinear;
  if (suite == "geometric") fn = detail::suite_geometric;
  if (suite == "nonconvex-fixed") fn = detail::suite_nonconvex_fixed;
  if (suite == "complexity") fn = detail::suite_complexity;
  if (suite == "oracles") fn = detail::suite_oracles;
  if (suite == "tuning") fn = detail::suite_tuning;
  if (fn == nullptr) throw ConfigError("unknown suite '" + std::string(suite) + "'");

  SuiteReport report;
  report.suite = std::string(suite);
  report.quick = quick;
  detail::SuiteContext ctx;
  ctx.quick = quick;
  ctx.report = &report;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    fn(ctx);
  } catch (const std::exception& e) {
    // A suite that throws fails with the reason recorded rather than aborting the caller.
    ctx.check("suite completed without error", false, 1.0, 0.0, e.what());
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.cauchy_steps = ctx.audit.steps();
  report.cauchy_violations = ctx.audit.violations();
  if (ctx.audit.steps() > 0) {
    ctx.check("cauchy contract on every audited step", ctx.audit.violations() == 0,
              static_cast<double>(ctx.audit.violations()), 0.0,
              detail::fmt("%ld steps, worst shortfall %.3g", ctx.audit.steps(), ctx.audit.worst_shortfall()));
  }
  return report;
}

namespace detail {

void SuiteContext::check(std::string name, bool passed, double statistic, double threshold, std::string detail) {
  report->checks.push_back({std::move(name), passed, statistic, threshold, std::move(detail)});
}

void SuiteContext::at_most(std::string name, double statistic, double threshold, std::string detail) {
  check(std::move(name), statistic <= threshold, statistic, threshold, std::move(detail));
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

SeedStats run_seeds(const ProblemOracle& oracle, TrishConfig config, const std::vector<std::uint64_t>& seeds,
                    const std::function<double(const IterationRecord&)>& stat, CauchyAudit& audit,
                    const StepObserver& extra) {
  const auto rows = static_cast<std::size_t>(config.iterations) + 1;
  SeedStats out;
  std::vector<double> mean(rows, 0.0), m2(rows, 0.0);
  StepObserver audit_obs = audit.observer();
  StepObserver obs = [&](const StepEvent& e) {
    audit_obs(e);
    if (extra) extra(e);
  };
  for (std::uint64_t seed : seeds) {
    config.seed = seed;
    const Trajectory t = run_trish(oracle, config, obs);
    if (!t.ok() || t.records.size() != rows) {
      ++out.incomplete;
      continue;
    }
    ++out.runs;
    const double n = static_cast<double>(out.runs);
    for (std::size_t r = 0; r < rows; ++r) {
      const double v = stat(t.records[r]);
      const double d = v - mean[r];
      mean[r] += d / n;
      m2[r] += d * (v - mean[r]);
    }
  }
  out.mean = mean;
  out.se.assign(rows, 0.0);
  if (out.runs > 1) {
    const double n = static_cast<double>(out.runs);
    for (std::size_t r = 0; r < rows; ++r) out.se[r] = std::sqrt(m2[r] / (n - 1.0) / n);
  }
  return out;
}

EnvelopeResult compare_envelope(const SeedStats& stats, const std::function<double(long)>& envelope) {
  EnvelopeResult res{-std::numeric_limits<double>::infinity(), -1, 0.0, 0.0, 0.0, -1};
  for (std::size_t r = 0; r < stats.mean.size(); ++r) {
    const double env = envelope(static_cast<long>(r) + 1);
    const double limit = env + 3.0 * stats.se[r];
    const double excess = stats.mean[r] - limit;
    if (excess > res.worst_excess) {
      res.worst_excess = excess;
      res.worst_row = static_cast<long>(r);
      res.worst_mean = stats.mean[r];
      res.worst_envelope = env;
    }
    if (r > 0 && limit > 0.0 && stats.mean[r] / limit > res.tightest_ratio) {
      res.tightest_ratio = stats.mean[r] / limit;
      res.tightest_row = static_cast<long>(r);
    }
  }
  return res;
}

}  // namespace detail
}  // namespace trish
