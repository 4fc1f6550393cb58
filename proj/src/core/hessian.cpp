#include <cmath>

#include "trish/core.hpp"
#include "trish/errors.hpp"

namespace trish {

HessianEstimate::HessianEstimate(std::size_t n, Apply apply, double norm_bound, bool is_zero)
    : n_(n), apply_(std::move(apply)), norm_bound_(norm_bound), is_zero_(is_zero) {
  if (!(norm_bound >= 0.0)) throw ConfigError("Hessian norm bound must be nonnegative");
}

HessianEstimate HessianEstimate::zero(std::size_t n) {
  return HessianEstimate(
      n, [n](const Vector&) { return Vector::Zero(static_cast<Eigen::Index>(n)); }, 0.0, true);
}

HessianEstimate HessianEstimate::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("Hessian matrix must be square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw InputError("Hessian matrix must be symmetric");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  double bound = 0.0;
  if (sym.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    bound = eig.eigenvalues().cwiseAbs().maxCoeff();
  }
  const bool zero = sym.isZero(0.0);
  return HessianEstimate(
      static_cast<std::size_t>(m.rows()), [sym](const Vector& v) -> Vector { return sym * v; }, bound, zero);
}

Vector HessianEstimate::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != n_) throw InputError("Hessian apply: dimension mismatch");
  return apply_(v);
}

Matrix HessianEstimate::to_dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Matrix h(n, n);
  Vector e = Vector::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    h.col(j) = apply(e);
    e[j] = 0.0;
  }
  return h;
}

}  // namespace trish
