#include <cmath>
#include <limits>

#include "trish/errors.hpp"
#include "trish/simd.hpp"
#include "trish/subproblem.hpp"

namespace trish {

double model_value(const Vector& g, const HessianEstimate& h, const Vector& s) {
  if (g.size() != s.size()) throw InputError("model_value: dimension mismatch");
  const Vector hs = h.apply(s);
  return simd::dot(view(g), view(s)) + 0.5 * simd::dot(view(s), view(hs));
}

Vector cauchy_point(const Vector& g, const HessianEstimate& h, double delta) {
  const double gg = simd::sum_squares(view(g));
  if (gg == 0.0) throw DegenerateInput("Cauchy point undefined for a zero gradient");
  if (!(delta > 0.0)) throw ConfigError("Cauchy point requires a positive radius");
  const double gnorm = std::sqrt(gg);
  const Vector hg = h.apply(g);
  const double ghg = simd::dot(view(g), view(hg));
  if (ghg > 0.0 && gnorm * gg <= delta * ghg) return (-(gg / ghg)) * g;
  return (-(delta / gnorm)) * g;
}

double cauchy_lower_bound(double g_norm, double delta, double norm_bound) {
  const double curvature_limit =
      norm_bound > 0.0 ? g_norm / norm_bound : std::numeric_limits<double>::infinity();
  return 0.5 * g_norm * std::min(delta, curvature_limit);
}

double cauchy_alternative_bound(double g_norm, double delta, double norm_bound) {
  const double boundary = delta * g_norm - 0.5 * delta * delta * norm_bound;
  const double interior =
      norm_bound > 0.0 ? 0.5 * g_norm * g_norm / norm_bound : std::numeric_limits<double>::infinity();
  return std::min(boundary, interior);
}

}  // namespace trish
