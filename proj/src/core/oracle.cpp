#include <cmath>
#include <string>

#include "trish/core.hpp"
#include "trish/errors.hpp"

namespace trish {

bool all_finite(const Vector& v) noexcept {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return false;
  }
  return true;
}

void require_finite(const Vector& v, std::string_view what) {
  if (!all_finite(v)) throw EvaluationError("non-finite " + std::string(what));
}

void require_finite(double v, std::string_view what) {
  if (!std::isfinite(v)) throw EvaluationError("non-finite " + std::string(what));
}

Matrix dense_hessian(const ProblemOracle& oracle, const Vector& x) {
  const auto n = static_cast<Eigen::Index>(oracle.dim());
  Matrix h(n, n);
  Vector e = Vector::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    h.col(j) = oracle.hvp(x, e);
    e[j] = 0.0;
  }
  return h;
}

double default_fd_step(const Vector& x) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
}

Vector hvp_finite_difference(const ProblemOracle& oracle, const Vector& x, const Vector& v, double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
  require_finite(v, "direction");
  if (v.isZero(0.0)) return Vector::Zero(x.size());
  const Vector plus = oracle.grad(x + h * v);
  const Vector minus = oracle.grad(x - h * v);
  require_finite(plus, "gradient");
  require_finite(minus, "gradient");
  return (plus - minus) / (2.0 * h);
}

Vector gradient_finite_difference(const ProblemOracle& oracle, const Vector& x, double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = oracle.value(probe);
    probe[i] = x[i] - h;
    const double fm = oracle.value(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  require_finite(g, "finite-difference gradient");
  return g;
}

}  // namespace trish
