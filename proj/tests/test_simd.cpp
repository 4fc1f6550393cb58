#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "trish/errors.hpp"
#include "trish/simd.hpp"

namespace {

using trish::simd::KernelTable;

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Reassociation bound for a length-n reduction.
double tol(std::size_t n, double magnitude) { return 1e-15 * static_cast<double>(n + 8) * (1.0 + magnitude); }

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx = trish::simd::avx2_kernels();
    if (avx == nullptr) GTEST_SKIP() << "AVX2 kernels unavailable on this machine";
  }
  const KernelTable& ref = trish::simd::scalar_kernels();
  const KernelTable* avx = nullptr;
};

TEST_F(SimdEquivalence, DotAndSumSquaresAcrossLengths) {
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 33u, 100u, 1001u}) {
    const auto x = random_vec(n, n), y = random_vec(n, n + 100);
    const double d0 = ref.dot(x.data(), y.data(), n), d1 = avx->dot(x.data(), y.data(), n);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]);
    EXPECT_NEAR(d0, d1, tol(n, mag)) << "n=" << n;
    const double s0 = ref.sum_squares(x.data(), n), s1 = avx->sum_squares(x.data(), n);
    EXPECT_NEAR(s0, s1, tol(n, s0)) << "n=" << n;
  }
}

TEST_F(SimdEquivalence, AxpyAndScaleAreExact) {
  for (std::size_t n : {1u, 4u, 9u, 64u, 257u}) {
    const auto x = random_vec(n, 1);
    auto y0 = random_vec(n, 2), y1 = y0;
    ref.axpy(-0.37, x.data(), y0.data(), n);
    avx->axpy(-0.37, x.data(), y1.data(), n);
    // FMA may round once instead of twice.
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y0[i], y1[i], 4e-16 * (1.0 + std::abs(y0[i])));
    ref.scale(1.5, y0.data(), n);
    avx->scale(1.5, y1.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y0[i], y1[i], 8e-16 * (1.0 + std::abs(y0[i])));
  }
}

TEST_F(SimdEquivalence, GemvAcrossShapes) {
  for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {3, 5}, {8, 8}, {10, 10}, {37, 11}}) {
    const auto a = random_vec(rows * cols, rows * 31 + cols);
    const auto x = random_vec(cols, 7);
    std::vector<double> y0(rows), y1(rows);
    ref.gemv(a.data(), rows, cols, x.data(), y0.data());
    avx->gemv(a.data(), rows, cols, x.data(), y1.data());
    for (std::size_t i = 0; i < rows; ++i) EXPECT_NEAR(y0[i], y1[i], tol(cols, std::abs(y0[i]) + 10.0));
  }
}

TEST(SimdDispatch, ScalarIsAlwaysAvailable) {
  EXPECT_EQ(trish::simd::scalar_kernels().isa, trish::simd::Isa::scalar);
  EXPECT_NO_THROW(trish::simd::force_isa(trish::simd::Isa::scalar));
  EXPECT_EQ(trish::simd::active().isa, trish::simd::Isa::scalar);
  if (trish::simd::avx2_kernels() != nullptr) {
    trish::simd::force_isa(trish::simd::Isa::avx2);
    EXPECT_EQ(trish::simd::active().isa, trish::simd::Isa::avx2);
  } else {
    EXPECT_THROW(trish::simd::force_isa(trish::simd::Isa::avx2), trish::ConfigError);
  }
}

}  // namespace
