#pragma once

// Trust-region radius rule and subproblem solvers.

#include <optional>
#include <string_view>

#include "trish/core.hpp"

namespace trish {

/// Which branch of the radius rule fired. Breakpoints belong to case2.
enum class RadiusCase : int { case1 = 1, case2 = 2, case3 = 3 };

std::string_view to_string(RadiusCase c) noexcept;

struct Radius {
  double delta;
  RadiusCase tag;
};

/// delta = g1*alpha*|g| below 1/g1, alpha on [1/g1, 1/g2], g2*alpha*|g| above 1/g2.
/// Throws ConfigError unless 0 < gamma2 <= gamma1 and alpha > 0.
Radius radius(double g_norm, double alpha, double gamma1, double gamma2);

/// g's + 0.5 s'Hs
double model_value(const Vector& g, const HessianEstimate& h, const Vector& s);

/// Minimizer of the model along -g within the radius. Throws DegenerateInput for g = 0.
Vector cauchy_point(const Vector& g, const HessianEstimate& h, double delta);

/// 0.5 |g| min{delta, |g|/B}, with |g|/0 read as +infinity.
double cauchy_lower_bound(double g_norm, double delta, double norm_bound);

/// min{delta |g| - 0.5 delta^2 B, 0.5 |g|^2 / B}; for B = 0 the second term is +infinity.
double cauchy_alternative_bound(double g_norm, double delta, double norm_bound);

struct TRStep {
  Vector s;
  double delta = 0.0;
  RadiusCase tag = RadiusCase::case1;
  double model_decrease = 0.0;   // -(g's + 0.5 s'Hs)
  double cauchy_decrease = 0.0;  // decrease attained by the Cauchy point
  double cauchy_bound = 0.0;     // 0.5 |g| min{delta, |g|/B}
  int cg_iterations = 0;         // Hessian applications spent by the solver
  bool boundary_hit = false;
  std::optional<double> upsilon;  // KKT multiplier; set only by the exact solver
};

struct SteihaugOptions {
  int max_iters = 3;
  double residual_tol = 1e-10;
};

enum class CgExit { converged, iteration_cap, negative_curvature, boundary };

/// Truncated CG from s = 0. Uses H only through apply(); never worse than the Cauchy point.
/// g = 0 returns s = 0 with zero decrease.
TRStep steihaug_cg(const Vector& g, const HessianEstimate& h, double delta, const SteihaugOptions& options = {},
                   CgExit* exit_reason = nullptr);

struct TrsSolution {
  Vector s;
  double upsilon = 0.0;
  bool hard_case = false;
  int newton_iterations = 0;
};

/// Global minimizer of g's + 0.5 s'Hs over |s| <= delta for dense symmetric H, with its
/// multiplier. Eigendecomposition + safeguarded Newton on the secular equation; hard case
/// completed along a minimal eigenvector. Throws InputError for asymmetric H and
/// NumericalError when the secular iteration fails.
TrsSolution exact_trs(const Vector& g, const Matrix& h, double delta, double tol = 1e-12);

struct KktResiduals {
  double stationarity;     // |g + (H + uI) s|
  double psd_margin;       // lambda_min(H + uI)
  double complementarity;  // |u (delta - |s|)|
};

KktResiduals kkt_residuals(const Vector& g, const Matrix& h, double delta, const Vector& s, double upsilon);

}  // namespace trish
