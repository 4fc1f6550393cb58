#pragma once

// Dense BLAS-1/2 style kernels used in the optimizer hot loops.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA implementation.  The active table is chosen once at startup from
// CPUID (override with TRISH_ISA=scalar|avx2) and never changes during a run,
// so a single process is bit-reproducible.  The two variants agree to within
// normal floating-point reassociation error; tests/test_simd.cpp pins that.

#include <cstddef>
#include <span>
#include <string_view>

namespace trish::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // x *= a
  void (*scale)(double a, double* x, std::size_t n);
  // y = A x, A column-major rows x cols
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the AVX2 translation unit was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

bool cpu_has_avx2() noexcept;

const KernelTable& active() noexcept;

/// Test hook. Throws ConfigError when the requested ISA is unavailable.
void force_isa(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline double sum_squares(std::span<const double> x) { return active().sum_squares(x.data(), x.size()); }
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void scale(double a, std::span<double> x) { active().scale(a, x.data(), x.size()); }

}  // namespace trish::simd
