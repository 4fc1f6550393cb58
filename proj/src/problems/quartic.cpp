#include <cmath>

#include "trish/errors.hpp"
#include "trish/problems.hpp"

namespace trish {

QuarticProblem::QuarticProblem(Matrix A, Vector b, double sigma, double radius)
    : A_(std::move(A)), b_(std::move(b)), sigma_(sigma), radius_(radius) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size() || b_.size() == 0) {
    throw InputError("quartic: A must be n x n and b of length n");
  }
  if (!(sigma_ >= 0.0) || !(radius_ > 0.0)) throw ConfigError("quartic: need sigma >= 0 and radius > 0");
  A_ = 0.5 * (A_ + A_.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A_, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  if (!(ev(0) > 0.0)) throw InputError("quartic: A must be positive definite");

  // Hessian is A + 3 sigma diag(x^2); its variation is 3 sigma diag((x - y)(x + y)).
  constants_.L_g = ev(ev.size() - 1) + 3.0 * sigma_ * radius_ * radius_;
  constants_.L_H = 6.0 * sigma_ * radius_;
  constants_.c = ev(0);

  // Strongly convex: damped Newton from the quadratic minimizer.
  Vector x = A_.llt().solve(b_);
  for (int it = 0; it < 200; ++it) {
    const Vector g = grad(x);
    if (g.norm() <= 1e-15 * (1.0 + b_.norm())) break;
    Matrix h = A_;
    h.diagonal() += 3.0 * sigma_ * x.cwiseProduct(x);
    const Vector d = h.llt().solve(-g);
    double t = 1.0;
    const double f0 = value(x);
    while (t > 1e-12 && value(x + t * d) > f0 + 1e-4 * t * g.dot(d)) t *= 0.5;
    x += t * d;
    if (t * d.norm() <= 1e-16 * (1.0 + x.norm())) break;
  }
  minimizer_ = x;
  constants_.f_inf = value(x);
}

bool QuarticProblem::in_box(const Vector& x) const { return x.cwiseAbs().maxCoeff() <= radius_; }

double QuarticProblem::value(const Vector& x) const {
  return 0.5 * x.dot(A_ * x) - b_.dot(x) + 0.25 * sigma_ * x.array().pow(4).sum();
}

Vector QuarticProblem::grad(const Vector& x) const {
  return A_ * x - b_ + sigma_ * x.array().cube().matrix();
}

Vector QuarticProblem::hvp(const Vector& x, const Vector& v) const {
  return A_ * v + (3.0 * sigma_ * x.array().square() * v.array()).matrix();
}

}  // namespace trish
