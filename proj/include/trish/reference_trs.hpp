#pragma once

// Independent trust-region-subproblem oracle used by verification. It shares no code with
// exact_trs: the smallest eigenvalue comes from Cholesky-success bisection and the optimum
// from maximizing the concave dual d(u) = -0.5 g'(H + uI)^{-1} g - 0.5 u delta^2 over
// u >= max(0, -lambda_min). Strong duality makes max d equal the primal minimum.

#include "trish/core.hpp"

namespace trish::reference {

/// Smallest eigenvalue of a symmetric matrix by bisection on positive definiteness.
double lambda_min_bisection(const Matrix& h);

struct DualOptimum {
  double objective;  // min of g's + 0.5 s'Hs over |s| <= delta
  double upsilon;    // maximizing multiplier
  double lambda_min;
};

DualOptimum trs_dual_optimum(const Vector& g, const Matrix& h, double delta);

}  // namespace trish::reference
