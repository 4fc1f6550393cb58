#include <cmath>

#include "trish/errors.hpp"
#include "trish/problems.hpp"

namespace trish {

RosenbrockProblem::RosenbrockProblem(std::size_t n, double box) : n_(n), box_(box) {
  if (n < 2) throw ConfigError("rosenbrock: n must be at least 2");
  if (!(box >= 1.0) || !std::isfinite(box)) throw ConfigError("rosenbrock: box must be >= 1 (it contains the minimizer)");
  const double B = box;
  // Gershgorin on the tridiagonal Hessian over the box.
  constants_.L_g = 1200.0 * B * B + 1200.0 * B + 202.0;
  // Frobenius norm of the third-derivative tensor: per link one 2400 x_i entry and three -400 entries.
  constants_.L_H = std::sqrt(static_cast<double>(n - 1) * ((2400.0 * B) * (2400.0 * B) + 3.0 * 400.0 * 400.0));
  constants_.f_inf = 0.0;
}

bool RosenbrockProblem::in_box(const Vector& x) const { return x.cwiseAbs().maxCoeff() <= box_; }

double RosenbrockProblem::value(const Vector& x) const {
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double t = x(i + 1) - x(i) * x(i);
    const double u = 1.0 - x(i);
    f += 100.0 * t * t + u * u;
  }
  return f;
}

Vector RosenbrockProblem::grad(const Vector& x) const {
  Vector g = Vector::Zero(static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double t = x(i + 1) - x(i) * x(i);
    g(i) += -400.0 * x(i) * t - 2.0 * (1.0 - x(i));
    g(i + 1) += 200.0 * t;
  }
  return g;
}

Vector RosenbrockProblem::hvp(const Vector& x, const Vector& v) const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double hii = 1200.0 * x(i) * x(i) - 400.0 * x(i + 1) + 2.0;
    const double hij = -400.0 * x(i);
    out(i) += hii * v(i) + hij * v(i + 1);
    out(i + 1) += hij * v(i) + 200.0 * v(i + 1);
  }
  return out;
}

}  // namespace trish
