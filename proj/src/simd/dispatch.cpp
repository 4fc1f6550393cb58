#include <atomic>
#include <cstdlib>
#include <string>

#include "trish/errors.hpp"
#include "trish/simd.hpp"

namespace trish::simd {

#if defined(TRISH_WITH_AVX2)
const KernelTable& avx2_kernel_table() noexcept;
#endif

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool cpu_has_avx2() noexcept {
#if defined(TRISH_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* avx2_kernels() noexcept {
#if defined(TRISH_WITH_AVX2)
  if (cpu_has_avx2()) return &avx2_kernel_table();
#endif
  return nullptr;
}

namespace {

const KernelTable* select_default() noexcept {
  const char* env = std::getenv("TRISH_ISA");
  if (env != nullptr && std::string(env) == "scalar") return &scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> table{select_default()};
  return table;
}

}  // namespace

const KernelTable& active() noexcept { return *slot().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::scalar) {
    slot().store(&scalar_kernels());
    return;
  }
  const KernelTable* t = avx2_kernels();
  if (t == nullptr) throw ConfigError("AVX2 kernels unavailable on this build/CPU");
  slot().store(t);
}

}  // namespace trish::simd
