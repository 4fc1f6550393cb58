#include "trish/schedules.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "trish/errors.hpp"

namespace trish {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

StepsizeSchedule StepsizeSchedule::constant(double alpha) { return {ConstantStepsize{alpha}}; }
StepsizeSchedule StepsizeSchedule::diminishing(double a, double b) { return {DiminishingStepsize{a, b}}; }

void StepsizeSchedule::validate() const {
  std::visit(overloaded{
                 [](const ConstantStepsize& c) {
                   if (!(c.alpha > 0.0) || !std::isfinite(c.alpha)) throw ConfigError("alpha must be positive");
                 },
                 [](const DiminishingStepsize& d) {
                   if (!(d.a > 0.0) || !(d.b > 0.0)) throw ConfigError("diminishing schedule needs a > 0 and b > 0");
                 },
                 [](const CustomStepsize& c) {
                   if (!c.alpha) throw ConfigError("custom stepsize schedule has no callback");
                 },
             },
             kind);
}

std::string StepsizeSchedule::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ConstantStepsize& c) { os << "constant(" << c.alpha << ")"; },
                 [&](const DiminishingStepsize& d) { os << "diminishing(" << d.a << "," << d.b << ")"; },
                 [&](const CustomStepsize& c) { os << c.label; },
             },
             kind);
  return os.str();
}

double stepsize_at(const StepsizeSchedule& schedule, long k) {
  if (k < 1) throw ConfigError("iteration index starts at 1");
  const double alpha = std::visit(overloaded{
                                      [](const ConstantStepsize& c) { return c.alpha; },
                                      [k](const DiminishingStepsize& d) { return d.a / (d.b + static_cast<double>(k)); },
                                      [k](const CustomStepsize& c) { return c.alpha(k); },
                                  },
                                  schedule.kind);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("stepsize schedule produced a nonpositive value");
  return alpha;
}

GammaSchedule GammaSchedule::constant(double gamma1, double gamma2) { return {ConstantGammas{gamma1, gamma2}}; }
GammaSchedule GammaSchedule::merging(double gamma1, double eta) { return {MergingGammas{gamma1, eta}}; }

void GammaSchedule::validate() const {
  std::visit(overloaded{
                 [](const ConstantGammas& c) {
                   if (!(c.gamma2 > 0.0) || !(c.gamma1 >= c.gamma2) || !std::isfinite(c.gamma1))
                     throw ConfigError("gammas must satisfy 0 < gamma2 <= gamma1");
                 },
                 [](const MergingGammas& m) {
                   if (!(m.gamma1 > 0.0)) throw ConfigError("gamma1 must be positive");
                   if (!(m.eta >= 0.0)) throw ConfigError("eta must be nonnegative");
                 },
                 [](const CustomGammas& c) {
                   if (!c.gammas) throw ConfigError("custom gamma schedule has no callback");
                 },
             },
             kind);
}

std::string GammaSchedule::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ConstantGammas& c) { os << "constant(" << c.gamma1 << "," << c.gamma2 << ")"; },
                 [&](const MergingGammas& m) { os << "merging(" << m.gamma1 << ",eta=" << m.eta << ")"; },
                 [&](const CustomGammas& c) { os << c.label; },
             },
             kind);
  return os.str();
}

Gammas gammas_at(const GammaSchedule& schedule, const StepsizeSchedule& stepsizes, long k) {
  const Gammas out = std::visit(
      overloaded{
          [](const ConstantGammas& c) { return Gammas{c.gamma1, c.gamma2}; },
          [&](const MergingGammas& m) {
            const double alpha = stepsize_at(stepsizes, k);
            return Gammas{m.gamma1, m.gamma1 * (1.0 - 0.5 * m.eta * alpha)};
          },
          [&](const CustomGammas& c) {
            const auto [g1, g2] = c.gammas(k, stepsize_at(stepsizes, k));
            return Gammas{g1, g2};
          },
      },
      schedule.kind);
  if (!(out.gamma2 > 0.0)) throw ConfigError("gamma2 must stay positive (need eta * alpha_k < 2)");
  if (!(out.gamma1 >= out.gamma2)) throw ConfigError("gamma schedule violates gamma2 <= gamma1");
  return out;
}

bool validate_stepsize(double alpha, double gamma1, double gamma2, double L_g, double M_H, const StepsizeRule& rule) {
  if (!(alpha > 0.0) || !(gamma2 > 0.0) || !(gamma1 >= gamma2)) return false;
  const double curvature = L_g + M_H;
  if (alpha > gamma2 / (4.0 * gamma1 * gamma1 * curvature)) return false;
  if (const auto* m = std::get_if<MergingStepsizeRule>(&rule)) {
    if (alpha > 1.0 / (6.0 * m->eta + 2.0 * gamma1 * curvature)) return false;
    if (M_H > m->eta / (2.0 * gamma1)) return false;
    if (std::abs((gamma1 - gamma2) - 0.5 * m->eta * gamma1 * alpha) > 1e-12) return false;
  }
  return true;
}

bool check_stepsize(double alpha, double gamma1, double gamma2, double L_g, double M_H, const StepsizeRule& rule,
                    Strictness strictness) {
  const bool ok = validate_stepsize(alpha, gamma1, gamma2, L_g, M_H, rule);
  if (!ok) {
    std::ostringstream os;
    os << "stepsize " << alpha << " outside the theoretical range for gamma1=" << gamma1 << " gamma2=" << gamma2
       << " L_g=" << L_g << " M_H=" << M_H;
    if (strictness == Strictness::strict) throw ConfigError(os.str());
    std::cerr << "warning: " << os.str() << '\n';
  }
  return ok;
}

double max_basic_stepsize(double gamma1, double gamma2, double L_g, double M_H) {
  return gamma2 / (4.0 * gamma1 * gamma1 * (L_g + M_H));
}

}  // namespace trish
