#include <algorithm>
#include <cmath>

#include "trish/errors.hpp"
#include "trish/problems.hpp"
#include "trish/simd.hpp"

namespace trish {

QuadraticProblem::QuadraticProblem(Matrix A, Vector b, std::string name)
    : A_(std::move(A)), b_(std::move(b)), name_(std::move(name)) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size() || b_.size() == 0) {
    throw InputError("quadratic: A must be n x n and b of length n");
  }
  if (!A_.allFinite() || !all_finite(b_)) throw InputError("quadratic: non-finite data");
  const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
  if ((A_ - A_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw InputError("quadratic: A is not symmetric");
  A_ = 0.5 * (A_ + A_.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(A_, Eigen::EigenvaluesOnly);
  eigenvalues_ = eig.eigenvalues();
  constants_.L_g = std::max(std::abs(eigenvalues_(0)), std::abs(eigenvalues_(eigenvalues_.size() - 1)));
  constants_.L_H = 0.0;
  if (eigenvalues_(0) > 0.0) {
    constants_.c = eigenvalues_(0);
    Eigen::LLT<Matrix> llt(A_);
    if (llt.info() == Eigen::Success) {
      minimizer_ = llt.solve(b_);
      constants_.f_inf = -0.5 * b_.dot(*minimizer_);
    }
  }
}

double QuadraticProblem::value(const Vector& x) const {
  const Vector ax = hvp(x, x);
  return 0.5 * simd::dot(view(x), view(ax)) - simd::dot(view(b_), view(x));
}

Vector QuadraticProblem::grad(const Vector& x) const {
  Vector g = hvp(x, x);
  simd::axpy(-1.0, view(b_), view(g));
  return g;
}

Vector QuadraticProblem::hvp(const Vector&, const Vector& v) const {
  if (v.size() != b_.size()) throw InputError("quadratic: dimension mismatch");
  Vector out(v.size());
  simd::active().gemv(A_.data(), static_cast<std::size_t>(A_.rows()), static_cast<std::size_t>(A_.cols()), v.data(),
                      out.data());
  return out;
}

QuadraticProblem make_quadratic(std::size_t n, double lambda_min, double lambda_max, std::uint64_t seed) {
  if (n == 0) throw ConfigError("make_quadratic: n must be positive");
  if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min) || !std::isfinite(lambda_max)) {
    throw ConfigError("make_quadratic: need 0 < lambda_min <= lambda_max");
  }
  RngStream rng(seed, StreamPurpose::problem_data);
  const auto m = static_cast<Eigen::Index>(n);

  Matrix gauss(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) gauss(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ() * Matrix::Identity(m, m);

  Vector lambda(m);
  const double lo = std::log(lambda_min), hi = std::log(lambda_max);
  for (Eigen::Index i = 0; i < m; ++i) lambda(i) = std::exp(lo + (hi - lo) * rng.uniform());
  lambda(0) = lambda_min;
  if (m > 1) lambda(m - 1) = lambda_max;

  Matrix A = q * lambda.asDiagonal() * q.transpose();
  A = 0.5 * (A + A.transpose());

  Vector b = rng.normal_vector(n);
  b /= b.norm();
  return QuadraticProblem(std::move(A), std::move(b), "quadratic");
}

}  // namespace trish
