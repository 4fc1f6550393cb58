#pragma once

// Test problems with certified constants.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "trish/core.hpp"

namespace trish {

/// f(x) = 0.5 x'Ax - b'x
class QuadraticProblem : public ProblemOracle {
 public:
  /// Throws InputError unless A is square, symmetric (1e-12 relative) and matches b.
  QuadraticProblem(Matrix A, Vector b, std::string name = "quadratic");

  std::string name() const override { return name_; }
  std::size_t dim() const override { return static_cast<std::size_t>(b_.size()); }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector hvp(const Vector& x, const Vector& v) const override;
  ProblemConstants constants() const override { return constants_; }

  const Matrix& A() const noexcept { return A_; }
  const Vector& b() const noexcept { return b_; }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }  // ascending
  /// A^{-1} b when A is positive definite.
  std::optional<Vector> minimizer() const { return minimizer_; }

 private:
  Matrix A_;
  Vector b_;
  std::string name_;
  Vector eigenvalues_;
  std::optional<Vector> minimizer_;
  ProblemConstants constants_;
};

/// Random orthogonal basis, eigenvalues log-uniform on [lambda_min, lambda_max] with both
/// endpoints present (n >= 2), b a random unit vector.
QuadraticProblem make_quadratic(std::size_t n, double lambda_min, double lambda_max, std::uint64_t seed);

/// f(x) = (1/N) sum_i log(1 + exp(-y_i a_i'x)) + 0.5 lambda |x|^2
class LogisticProblem : public FiniteSumOracle {
 public:
  /// Rows of `features` are samples; labels must be +-1. An empty validation set reuses the training set.
  LogisticProblem(Matrix features, Vector labels, double lambda_reg, Matrix validation_features = {},
                  Vector validation_labels = {});

  std::string name() const override { return "logistic"; }
  std::size_t dim() const override { return static_cast<std::size_t>(features_.cols()); }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector hvp(const Vector& x, const Vector& v) const override;
  ProblemConstants constants() const override { return constants_; }
  /// Mean unregularized loss on the held-out samples.
  double validation_value(const Vector& x) const override;

  std::size_t num_components() const override { return static_cast<std::size_t>(features_.rows()); }
  Vector batch_grad(const Vector& x, std::span<const std::size_t> batch) const override;
  Vector batch_hvp(const Vector& x, const Vector& v, std::span<const std::size_t> batch) const override;

  double lambda_reg() const noexcept { return lambda_; }

 private:
  Matrix features_;
  Vector labels_;
  double lambda_;
  Matrix val_features_;
  Vector val_labels_;
  ProblemConstants constants_;
};

/// Gaussian features, labels sign(a'w) for a hidden w with 10% flipped; a held-out set of
/// max(1, N/4) samples drawn from a separate stream.
LogisticProblem make_logistic(std::size_t N, std::size_t dim, double lambda_reg, std::uint64_t seed);

/// Chained Rosenbrock sum_{i<n} 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2.
/// L_g and L_H are certified on the box [-B, B]^n only.
class RosenbrockProblem : public ProblemOracle {
 public:
  explicit RosenbrockProblem(std::size_t n, double box = 2.0);

  std::string name() const override { return "rosenbrock"; }
  std::size_t dim() const override { return n_; }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector hvp(const Vector& x, const Vector& v) const override;
  ProblemConstants constants() const override { return constants_; }

  double box() const noexcept { return box_; }
  bool in_box(const Vector& x) const;

 private:
  std::size_t n_;
  double box_;
  ProblemConstants constants_;
};

/// f(x) = 0.5 x'Ax - b'x + (sigma/4) sum x_i^4 with A positive definite.
/// L_g and L_H are certified on the box [-R, R]^n; f_inf is computed by damped Newton.
class QuarticProblem : public ProblemOracle {
 public:
  QuarticProblem(Matrix A, Vector b, double sigma, double radius);

  std::string name() const override { return "quartic"; }
  std::size_t dim() const override { return static_cast<std::size_t>(b_.size()); }
  double value(const Vector& x) const override;
  Vector grad(const Vector& x) const override;
  Vector hvp(const Vector& x, const Vector& v) const override;
  ProblemConstants constants() const override { return constants_; }

  double radius() const noexcept { return radius_; }
  const Vector& minimizer() const noexcept { return minimizer_; }
  bool in_box(const Vector& x) const;

 private:
  Matrix A_;
  Vector b_;
  double sigma_;
  double radius_;
  Vector minimizer_;
  ProblemConstants constants_;
};

/// Dense CSV import. The matrix file holds n rows of n comma-separated numbers; the rhs file
/// holds n numbers, one per line or on a single line.
QuadraticProblem load_quadratic_csv(const std::filesystem::path& matrix_path, const std::filesystem::path& rhs_path);

/// Each row: label (+1/-1, or 0/1 mapped to -1/+1), then the features.
LogisticProblem load_logistic_csv(const std::filesystem::path& train_path, double lambda_reg,
                                  const std::optional<std::filesystem::path>& validation_path = std::nullopt);

}  // namespace trish
