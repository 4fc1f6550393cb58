#include <algorithm>
#include <cmath>

#include "trish/errors.hpp"
#include "trish/problems.hpp"
#include "trish/simd.hpp"

namespace trish {

namespace {

// log(1 + exp(-t)) without overflow.
double softplus_neg(double t) { return t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t)); }

// 1 / (1 + exp(t))
double sigmoid_neg(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

double row_dot(const Matrix& a, Eigen::Index i, const Vector& x) { return a.row(i).dot(x); }

void check_labels(const Vector& y, const char* what) {
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 1.0 && y(i) != -1.0) throw InputError(std::string(what) + ": labels must be +1 or -1");
  }
}

}  // namespace

LogisticProblem::LogisticProblem(Matrix features, Vector labels, double lambda_reg, Matrix validation_features,
                                 Vector validation_labels)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      lambda_(lambda_reg),
      val_features_(std::move(validation_features)),
      val_labels_(std::move(validation_labels)) {
  if (features_.rows() == 0 || features_.cols() == 0) throw InputError("logistic: empty feature matrix");
  if (labels_.size() != features_.rows()) throw InputError("logistic: label count differs from sample count");
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) throw ConfigError("logistic: lambda_reg must be nonnegative");
  if (!features_.allFinite()) throw InputError("logistic: non-finite features");
  check_labels(labels_, "logistic");
  if (val_features_.rows() == 0) {
    val_features_ = features_;
    val_labels_ = labels_;
  }
  if (val_features_.cols() != features_.cols() || val_labels_.size() != val_features_.rows()) {
    throw InputError("logistic: validation set shape mismatch");
  }
  check_labels(val_labels_, "logistic validation");

  const double r = features_.rowwise().norm().maxCoeff();
  constants_.L_g = 0.25 * r * r + lambda_;
  // |d^3/dt^3 log(1 + e^{-t})| <= 1/(6 sqrt 3)
  constants_.L_H = r * r * r / (6.0 * std::sqrt(3.0));
  if (lambda_ > 0.0) constants_.c = lambda_;
}

double LogisticProblem::value(const Vector& x) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < features_.rows(); ++i) s += softplus_neg(labels_(i) * row_dot(features_, i, x));
  return s / static_cast<double>(features_.rows()) + 0.5 * lambda_ * simd::sum_squares(view(x));
}

double LogisticProblem::validation_value(const Vector& x) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < val_features_.rows(); ++i) {
    s += softplus_neg(val_labels_(i) * row_dot(val_features_, i, x));
  }
  return s / static_cast<double>(val_features_.rows());
}

Vector LogisticProblem::grad(const Vector& x) const {
  Vector g = Vector::Zero(x.size());
  for (Eigen::Index i = 0; i < features_.rows(); ++i) {
    const double y = labels_(i);
    g.noalias() -= (y * sigmoid_neg(y * row_dot(features_, i, x))) * features_.row(i).transpose();
  }
  g /= static_cast<double>(features_.rows());
  simd::axpy(lambda_, view(x), view(g));
  return g;
}

Vector LogisticProblem::hvp(const Vector& x, const Vector& v) const {
  Vector out = Vector::Zero(x.size());
  for (Eigen::Index i = 0; i < features_.rows(); ++i) {
    const double p = sigmoid_neg(labels_(i) * row_dot(features_, i, x));
    out.noalias() += (p * (1.0 - p) * row_dot(features_, i, v)) * features_.row(i).transpose();
  }
  out /= static_cast<double>(features_.rows());
  simd::axpy(lambda_, view(v), view(out));
  return out;
}

Vector LogisticProblem::batch_grad(const Vector& x, std::span<const std::size_t> batch) const {
  if (batch.empty()) throw InputError("logistic: empty batch");
  Vector g = Vector::Zero(x.size());
  for (std::size_t idx : batch) {
    const auto i = static_cast<Eigen::Index>(idx);
    const double y = labels_(i);
    g.noalias() -= (y * sigmoid_neg(y * row_dot(features_, i, x))) * features_.row(i).transpose();
  }
  g /= static_cast<double>(batch.size());
  simd::axpy(lambda_, view(x), view(g));
  return g;
}

Vector LogisticProblem::batch_hvp(const Vector& x, const Vector& v, std::span<const std::size_t> batch) const {
  if (batch.empty()) throw InputError("logistic: empty batch");
  Vector out = Vector::Zero(x.size());
  for (std::size_t idx : batch) {
    const auto i = static_cast<Eigen::Index>(idx);
    const double p = sigmoid_neg(labels_(i) * row_dot(features_, i, x));
    out.noalias() += (p * (1.0 - p) * row_dot(features_, i, v)) * features_.row(i).transpose();
  }
  out /= static_cast<double>(batch.size());
  simd::axpy(lambda_, view(v), view(out));
  return out;
}

namespace {

void synth(RngStream& rng, const Vector& w, std::size_t rows, Matrix& a, Vector& y) {
  const auto n = static_cast<Eigen::Index>(rows);
  const auto d = w.size();
  a.resize(n, d);
  y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = rng.normal();
    y(i) = a.row(i).dot(w) >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform() < 0.1) y(i) = -y(i);
  }
}

}  // namespace

LogisticProblem make_logistic(std::size_t N, std::size_t dim, double lambda_reg, std::uint64_t seed) {
  if (N == 0 || dim == 0) throw ConfigError("make_logistic: N and dim must be positive");
  RngStream data(seed, StreamPurpose::problem_data);
  const Vector w = data.normal_vector(dim);
  Matrix a, va;
  Vector y, vy;
  synth(data, w, N, a, y);
  RngStream held(seed, StreamPurpose::validation_data);
  synth(held, w, std::max<std::size_t>(1, N / 4), va, vy);
  return LogisticProblem(std::move(a), std::move(y), lambda_reg, std::move(va), std::move(vy));
}

}  // namespace trish
