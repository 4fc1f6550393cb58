#include "trish/reference_trs.hpp"

#include <cmath>
#include <limits>

#include "trish/errors.hpp"

namespace trish::reference {

namespace {

bool positive_definite(const Matrix& h, double shift) {
  Matrix m = h;
  m.diagonal().array() += shift;
  Eigen::LLT<Matrix> llt(m);
  return llt.info() == Eigen::Success;
}

// -inf where H + uI is not numerically positive definite.
double dual(const Vector& g, const Matrix& h, double delta, double u) {
  Matrix m = h;
  m.diagonal().array() += u;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const Vector x = llt.solve(g);
  if (!all_finite(x)) return -std::numeric_limits<double>::infinity();
  return -0.5 * g.dot(x) - 0.5 * u * delta * delta;
}

}  // namespace

double lambda_min_bisection(const Matrix& h) {
  const double r = h.norm() + 1.0;
  double lo = -r, hi = r;  // H - lo I is PD, H - hi I is not
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (positive_definite(h, -mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

DualOptimum trs_dual_optimum(const Vector& g, const Matrix& h, double delta) {
  if (!(delta > 0.0)) throw InputError("reference TRS needs delta > 0");
  const double lmin = lambda_min_bisection(h);
  const double lo = std::max(0.0, -lmin);
  // At u = lo + |g|/delta, |s(u)| <= delta, so the maximizer lies in [lo, hi].
  const double hi = lo + g.norm() / delta + 1.0;

  double best_u = lo;
  double best = dual(g, h, delta, lo);
  // Golden-section search; d is concave on (lo, hi].
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = dual(g, h, delta, c), fd = dual(g, h, delta, d);
  for (int it = 0; it < 300 && b - a > 0.0; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = dual(g, h, delta, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = dual(g, h, delta, d);
    }
    if (c <= a || d >= b) break;
  }
  for (double u : {a, b, c, d}) {
    const double v = dual(g, h, delta, u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  if (fc > best) {
    best = fc;
    best_u = c;
  }
  if (fd > best) {
    best = fd;
    best_u = d;
  }
  if (!std::isfinite(best)) throw NumericalError("reference TRS: dual never finite", "");
  return {best, best_u, lmin};
}

}  // namespace trish::reference
