#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "trish/core.hpp"
#include "trish/errors.hpp"
#include "trish/problems.hpp"

namespace {

using namespace trish;

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

QuadraticProblem diag14() { return QuadraticProblem(diag2(1, 4), (Vector(2) << 1, 1).finished()); }

TEST(Noise, NoneIsExact) {
  const auto q = make_quadratic(5, 1, 3, 1);
  RngStream rng(1, StreamPurpose::gradient_noise);
  const Vector x = Vector::Constant(5, 0.3);
  EXPECT_EQ(sample_gradient(q, x, NoiseModel{}, 1, 0.1, rng), q.grad(x));
}

TEST(Noise, TargetVariances) {
  EXPECT_DOUBLE_EQ(target_variance(BoundedNoise{1}, 5, 0.1), 1.0);
  EXPECT_DOUBLE_EQ(target_variance(StepwiseNoise{2}, 5, 0.1), 0.2);
  EXPECT_DOUBLE_EQ(target_variance(GeometricNoise{1, 0.5}, 3, 0.1), 0.25);
  EXPECT_TRUE(std::isnan(target_variance(MiniBatchNoise{4}, 1, 0.1)));
}

TEST(Noise, BoundedPerCoordinateVariance) {
  const auto q = make_quadratic(4, 1, 2, 3);
  RngStream rng(9, StreamPurpose::gradient_noise);
  const Vector x = Vector::Zero(4);
  const Vector grad = q.grad(x);
  NoiseModel nm;
  nm.gradient = BoundedNoise{1};
  const int draws = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double e = sample_gradient(q, x, nm, 1, 0.1, rng)(2) - grad(2);
    sum += e;
    sum2 += e * e;
  }
  const double var = sum2 / draws - (sum / draws) * (sum / draws);
  const double se = 0.25 * std::sqrt(2.0 / draws);  // Gaussian: Var(s^2) = 2 sigma^4
  EXPECT_NEAR(var, 0.25, 3 * se);
}

TEST(Noise, RejectsBadParameters) {
  NoiseModel nm;
  nm.gradient = GeometricNoise{1, 1.5};
  EXPECT_THROW(nm.validate(), ConfigError);
  nm.gradient = BoundedNoise{-1};
  EXPECT_THROW(nm.validate(), ConfigError);
}

TEST(Rng, StreamsAreIndependentAndReproducible) {
  RngStream a(3, StreamPurpose::gradient_noise), b(3, StreamPurpose::gradient_noise),
      c(3, StreamPurpose::hessian_perturbation);
  const double x = a.normal();
  EXPECT_EQ(x, b.normal());
  EXPECT_NE(x, c.normal());
}

TEST(Hessian, ZeroAndCapped) {
  const auto z = HessianEstimate::zero(3);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.norm_bound(), 0.0);
  EXPECT_EQ(z.apply(Vector::Ones(3)).norm(), 0.0);

  const auto q = diag14();
  RngStream rng(0, StreamPurpose::hessian_perturbation);
  NoiseModel nm;
  nm.hessian = ExactCappedHessian{10};
  const Vector v = (Vector(2) << 0.3, -2).finished();
  EXPECT_TRUE(sample_hessian(q, Vector::Zero(2), nm, rng).apply(v).isApprox(q.A() * v));
  nm.hessian = ExactCappedHessian{2};
  const auto h = sample_hessian(q, Vector::Zero(2), nm, rng);
  EXPECT_TRUE(h.apply(Vector::Unit(2, 1)).isApprox((Vector(2) << 0, 2).finished()));
  EXPECT_LE(h.norm_bound(), 2.0);
}

TEST(Hessian, PerturbedRespectsCap) {
  const auto q = make_quadratic(6, 1, 5, 2);
  NoiseModel nm;
  nm.hessian = PerturbedHessian{3, 2};
  RngStream rng(4, StreamPurpose::hessian_perturbation);
  for (int t = 0; t < 20; ++t) {
    const Matrix m = sample_hessian(q, Vector::Zero(6), nm, rng).to_dense();
    EXPECT_LE((m - m.transpose()).norm(), 1e-12);
    EXPECT_LE(Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues().cwiseAbs().maxCoeff(), 3.0 + 1e-12);
  }
}

TEST(Quadratic, ConstantsFromEigenvalues) {
  const auto iso = make_quadratic(2, 1, 1, 5);
  EXPECT_NEAR(iso.constants().L_g, 1.0, 1e-12);
  EXPECT_NEAR(*iso.constants().c, 1.0, 1e-12);
  EXPECT_TRUE(iso.A().isApprox(Matrix::Identity(2, 2), 1e-12));

  const auto q = make_quadratic(10, 1, 10, 6);
  const Vector eig = Eigen::SelfAdjointEigenSolver<Matrix>(q.A()).eigenvalues();
  EXPECT_NEAR(eig(0), 1.0, 1e-10);
  EXPECT_NEAR(eig(9), 10.0, 1e-10);
  EXPECT_NEAR(*q.constants().c, 1.0, 1e-10);
  EXPECT_NEAR(q.constants().L_g, 10.0, 1e-10);

  const auto d = diag14();
  EXPECT_NEAR(d.constants().L_g, 4.0, 1e-14);
  EXPECT_EQ(d.constants().L_H.value_or(-1), 0.0);
  EXPECT_NEAR(*d.constants().c, 1.0, 1e-14);
  EXPECT_NEAR(*d.constants().f_inf, -0.5 - 0.125, 1e-14);
}

TEST(Quadratic, HvpIsExact) {
  const auto q = make_quadratic(7, 0.5, 4, 8);
  const Vector v = Vector::LinSpaced(7, -1, 1);
  EXPECT_LE((q.hvp(Vector::Ones(7), v) - q.A() * v).norm(), 1e-13);
  EXPECT_EQ(q.hvp(Vector::Ones(7), Vector::Zero(7)).norm(), 0.0);
}

TEST(Quadratic, RejectsAsymmetric) {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = 0.5;
  EXPECT_THROW(QuadraticProblem(a, Vector::Zero(2)), InputError);
}

TEST(Rosenbrock, HvpAtMinimizer) {
  const RosenbrockProblem r(2);
  const Vector x = Vector::Ones(2);
  const Vector e1 = Vector::Unit(2, 0);
  // Analytic Hessian at (1,1) is [[802, -400], [-400, 200]].
  const Vector exact = (Vector(2) << 802, -400).finished();
  EXPECT_LE((r.hvp(x, e1) - exact).norm() / exact.norm(), 1e-12);
  EXPECT_LE((hvp_finite_difference(r, x, e1, 1e-5) - exact).norm() / exact.norm(), 1e-6);
  EXPECT_FALSE(r.constants().c.has_value());
  EXPECT_EQ(*r.constants().f_inf, 0.0);
}

TEST(Logistic, FullBatchAndRegularizer) {
  const auto lp = make_logistic(40, 3, 0.1, 2);
  std::vector<std::size_t> all(40);
  for (std::size_t i = 0; i < 40; ++i) all[i] = i;
  const Vector x = Vector::Constant(3, 0.2);
  EXPECT_LE((lp.batch_grad(x, all) - lp.grad(x)).norm(), 1e-14);
  EXPECT_GE(*lp.constants().c, 0.1);
  EXPECT_FALSE(make_logistic(40, 3, 0.0, 2).constants().c.has_value());

  NoiseModel nm;
  nm.gradient = MiniBatchNoise{40};
  RngStream rng(0, StreamPurpose::gradient_noise);
  EXPECT_LE((sample_gradient(lp, x, nm, 1, 0.1, rng) - lp.grad(x)).norm(), 1e-14);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  const auto lp = make_logistic(50, 4, 0.01, 3);
  const Vector x = Vector::LinSpaced(4, -0.5, 0.5);
  const Vector fd = gradient_finite_difference(lp, x, default_fd_step(x));
  EXPECT_LE((fd - lp.grad(x)).norm() / std::max(1.0, lp.grad(x).norm()), 1e-6);
}

TEST(Quartic, ConstantsAndMinimizer) {
  const auto base = make_quadratic(3, 1, 2, 4);
  const QuarticProblem p(base.A(), base.b(), 0.5, 2.0);
  EXPECT_LE(p.grad(p.minimizer()).norm(), 1e-10);
  EXPECT_NEAR(*p.constants().f_inf, p.value(p.minimizer()), 1e-14);
  EXPECT_NEAR(*p.constants().L_H, 6 * 0.5 * 2.0, 1e-14);
}

TEST(CsvImport, QuadraticAndLogistic) {
  const auto dir = std::filesystem::temp_directory_path() / "trish_csv_import_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "A.csv") << "2,0\n0,4\n";
  std::ofstream(dir / "b.csv") << "1\n1\n";
  const auto q = load_quadratic_csv(dir / "A.csv", dir / "b.csv");
  EXPECT_NEAR(q.constants().L_g, 4.0, 1e-14);

  std::ofstream(dir / "train.csv") << "1,0.5,1\n0,-0.5,2\n-1,1,1\n";
  const auto lp = load_logistic_csv(dir / "train.csv", 0.0);
  EXPECT_EQ(lp.num_components(), 3u);
  EXPECT_EQ(lp.dim(), 2u);

  std::ofstream(dir / "bad.csv") << "1,0.5\n2,0.1\n";
  try {
    load_logistic_csv(dir / "bad.csv", 0.0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("bad.csv: row 2"), std::string::npos) << e.what();
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
