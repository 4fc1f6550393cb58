#include <cmath>

#include "trish/errors.hpp"
#include "trish/simd.hpp"
#include "trish/subproblem.hpp"

namespace trish {

namespace {

// Positive root tau of |s + tau p| = delta, assuming |s| <= delta.
double boundary_step(const Vector& s, const Vector& p, double delta) {
  const double pp = simd::sum_squares(view(p));
  const double sp = simd::dot(view(s), view(p));
  const double ss = simd::sum_squares(view(s));
  const double rad = std::max(0.0, delta * delta - ss);
  const double disc = std::sqrt(sp * sp + pp * rad);
  // Avoid cancellation when sp > 0.
  if (sp > 0.0) return rad / (sp + disc);
  return (disc - sp) / pp;
}

}  // namespace

TRStep steihaug_cg(const Vector& g, const HessianEstimate& h, double delta, const SteihaugOptions& options,
                   CgExit* exit_reason) {
  if (!(delta >= 0.0)) throw ConfigError("trust-region radius must be nonnegative");
  if (options.max_iters < 1) throw ConfigError("Steihaug-CG needs at least one iteration");
  const auto n = g.size();
  TRStep out;
  out.delta = delta;
  out.s = Vector::Zero(n);
  const double gg = simd::sum_squares(view(g));
  const double gnorm = std::sqrt(gg);
  if (gg == 0.0 || delta == 0.0) {
    if (exit_reason != nullptr) *exit_reason = CgExit::converged;
    return out;
  }

  Vector& s = out.s;
  Vector r = g;
  Vector p = -g;
  Vector hp(n);
  double rr = gg;
  CgExit why = CgExit::iteration_cap;

  for (int it = 0; it < options.max_iters; ++it) {
    hp = h.apply(p);
    ++out.cg_iterations;
    const double curvature = simd::dot(view(p), view(hp));
    if (curvature <= 0.0) {
      simd::axpy(boundary_step(s, p, delta), view(p), view(s));
      out.boundary_hit = true;
      why = CgExit::negative_curvature;
      break;
    }
    const double step = rr / curvature;
    Vector trial = s;
    simd::axpy(step, view(p), view(trial));
    if (simd::sum_squares(view(trial)) >= delta * delta) {
      simd::axpy(boundary_step(s, p, delta), view(p), view(s));
      out.boundary_hit = true;
      why = CgExit::boundary;
      break;
    }
    s = std::move(trial);
    simd::axpy(step, view(hp), view(r));
    const double rr_next = simd::sum_squares(view(r));
    if (std::sqrt(rr_next) <= options.residual_tol * gnorm) {
      why = CgExit::converged;
      break;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    simd::scale(beta, view(p));
    simd::axpy(-1.0, view(r), view(p));
  }

  const double snorm = s.norm();
  if (snorm > delta) s *= delta / snorm;

  const Vector sc = cauchy_point(g, h, delta);
  const double cauchy_model = model_value(g, h, sc);
  double model = model_value(g, h, s);
  if (model > cauchy_model) {
    // Rounding pushed CG above the Cauchy value; the Cauchy point is the first CG iterate anyway.
    s = sc;
    model = cauchy_model;
    out.boundary_hit = sc.norm() >= delta * (1.0 - 1e-12);
  }
  out.model_decrease = -model;
  out.cauchy_decrease = -cauchy_model;
  out.cauchy_bound = cauchy_lower_bound(gnorm, delta, h.norm_bound());
  if (exit_reason != nullptr) *exit_reason = why;
  return out;
}

}  // namespace trish
