#pragma once

// Problem oracles, stochastic derivative estimators and noise models.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trish {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

bool all_finite(const Vector& v) noexcept;

/// Throws EvaluationError naming `what` if any entry is NaN or infinite.
void require_finite(const Vector& v, std::string_view what);
void require_finite(double v, std::string_view what);

inline std::span<const double> view(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<double> view(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

/// Certified problem constants. Absent entries are unknown, never guessed.
struct ProblemConstants {
  double L_g = 0.0;               // gradient Lipschitz constant (bounds the Hessian norm)
  std::optional<double> L_H;      // Hessian Lipschitz constant
  std::optional<double> c;        // PL constant
  std::optional<double> f_inf;    // infimum of f
};

class ProblemOracle {
 public:
  virtual ~ProblemOracle() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector grad(const Vector& x) const = 0;
  virtual Vector hvp(const Vector& x, const Vector& v) const = 0;
  virtual ProblemConstants constants() const = 0;

  virtual Vector default_start() const { return Vector::Zero(static_cast<Eigen::Index>(dim())); }

  /// Held-out quality measure used by tuning (lower is better). Defaults to the noise-free objective.
  virtual double validation_value(const Vector& x) const { return value(x); }
};

/// f(x) = (1/N) sum_i f_i(x); supports mini-batch estimates over index multisets.
class FiniteSumOracle : public ProblemOracle {
 public:
  virtual std::size_t num_components() const = 0;
  /// Average of component gradients over `batch` (indices may repeat).
  virtual Vector batch_grad(const Vector& x, std::span<const std::size_t> batch) const = 0;
  virtual Vector batch_hvp(const Vector& x, const Vector& v, std::span<const std::size_t> batch) const = 0;
};

/// Dense Hessian assembled column by column from hvp. Intended for small n.
Matrix dense_hessian(const ProblemOracle& oracle, const Vector& x);

/// (eps)^{1/3} (1 + ||x||)
double default_fd_step(const Vector& x);

/// Central difference of the gradient along v: (grad(x + h v) - grad(x - h v)) / (2h).
Vector hvp_finite_difference(const ProblemOracle& oracle, const Vector& x, const Vector& v, double h);

/// Central-difference gradient of value(); used by gradient checks.
Vector gradient_finite_difference(const ProblemOracle& oracle, const Vector& x, double h);

// ---------------------------------------------------------------------------
// Random streams

enum class StreamPurpose : std::uint32_t {
  gradient_noise = 1,
  hessian_perturbation = 2,
  problem_data = 3,
  validation_data = 4,
  initial_point = 5,
};

/// One seeded stream per (run seed, purpose) pair.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamPurpose purpose);

  std::mt19937_64& engine() noexcept { return engine_; }
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  Vector normal_vector(std::size_t n);

  std::uint64_t seed() const noexcept { return seed_; }
  StreamPurpose purpose() const noexcept { return purpose_; }

 private:
  std::uint64_t seed_;
  StreamPurpose purpose_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// ---------------------------------------------------------------------------
// Noise models

struct NoNoise {};
/// E||g - grad f||^2 = M_g
struct BoundedNoise {
  double M_g;
};
/// E||g - grad f||^2 = M_g * alpha_k
struct StepwiseNoise {
  double M_g;
};
/// E||g - grad f||^2 = M_g * zeta^{k-1}
struct GeometricNoise {
  double M_g;
  double zeta;
};
/// Uniform-with-replacement mini-batch over a FiniteSumOracle; variance is data dependent.
struct MiniBatchNoise {
  std::size_t batch;
};

using GradientNoise = std::variant<NoNoise, BoundedNoise, StepwiseNoise, GeometricNoise, MiniBatchNoise>;

/// tau * Hessian with tau = min{1, M_H / L_g}
struct ExactCappedHessian {
  double M_H = std::numeric_limits<double>::infinity();
};
struct ZeroHessian {};
/// Exact-capped Hessian plus a symmetric rank-one perturbation of norm `scale`, re-capped to M_H.
struct PerturbedHessian {
  double M_H;
  double scale;
};

using HessianModel = std::variant<ExactCappedHessian, ZeroHessian, PerturbedHessian>;

struct NoiseModel {
  GradientNoise gradient = NoNoise{};
  HessianModel hessian = ExactCappedHessian{};

  /// Throws ConfigError on invalid parameters.
  void validate() const;
};

/// Target E||g_k - grad f(x_k)||^2 for the synthetic kinds; NaN for mini-batch.
double target_variance(const GradientNoise& noise, long k, double alpha);

std::string describe(const GradientNoise& noise);
std::string describe(const HessianModel& model);

// ---------------------------------------------------------------------------
// Hessian estimates

/// Matrix-free symmetric operator with a certified bound on its operator norm.
/// An estimate that wraps an oracle refers to it and must not outlive it.
class HessianEstimate {
 public:
  using Apply = std::function<Vector(const Vector&)>;

  HessianEstimate(std::size_t n, Apply apply, double norm_bound, bool is_zero = false);

  static HessianEstimate zero(std::size_t n);
  /// Symmetric matrix; norm bound is its spectral norm.
  static HessianEstimate from_matrix(const Matrix& m);

  Vector apply(const Vector& v) const;
  std::size_t dim() const noexcept { return n_; }
  double norm_bound() const noexcept { return norm_bound_; }
  bool is_zero() const noexcept { return is_zero_; }
  Matrix to_dense() const;

 private:
  std::size_t n_;
  Apply apply_;
  double norm_bound_;
  bool is_zero_;
};

struct GradientSample {
  Vector g;
  std::vector<std::size_t> batch;  // empty unless mini-batch noise
};

/// Unbiased gradient estimate at x. Synthetic kinds add isotropic Gaussian noise with
/// per-coordinate variance target_variance / n.
GradientSample draw_gradient(const ProblemOracle& oracle, const Vector& x, const NoiseModel& noise, long k,
                             double alpha, RngStream& rng);

Vector sample_gradient(const ProblemOracle& oracle, const Vector& x, const NoiseModel& noise, long k,
                       double alpha, RngStream& rng);

/// Hessian estimate at x per noise.hessian. `batch` (from the same step's gradient draw) selects
/// a mini-batch Hessian on finite-sum oracles.
HessianEstimate sample_hessian(const ProblemOracle& oracle, const Vector& x, const NoiseModel& noise,
                               RngStream& rng, std::span<const std::size_t> batch = {});

}  // namespace trish
