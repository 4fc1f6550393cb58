#include <cmath>

#include "trish/errors.hpp"
#include "trish/subproblem.hpp"

namespace trish {

std::string_view to_string(RadiusCase c) noexcept {
  switch (c) {
    case RadiusCase::case1: return "1";
    case RadiusCase::case2: return "2";
    case RadiusCase::case3: return "3";
  }
  return "?";
}

Radius radius(double g_norm, double alpha, double gamma1, double gamma2) {
  if (!(gamma2 > 0.0) || !(gamma1 >= gamma2) || !std::isfinite(gamma1)) {
    throw ConfigError("radius rule requires 0 < gamma2 <= gamma1 < inf");
  }
  if (!(alpha > 0.0)) throw ConfigError("stepsize must be positive");
  if (!(g_norm >= 0.0)) throw ConfigError("gradient norm must be nonnegative");
  if (g_norm < 1.0 / gamma1) return {gamma1 * alpha * g_norm, RadiusCase::case1};
  if (g_norm > 1.0 / gamma2) return {gamma2 * alpha * g_norm, RadiusCase::case3};
  return {alpha, RadiusCase::case2};
}

}  // namespace trish
