#include <cstdlib>
#include <string_view>

#include "tomokit/simd/kernels.hpp"

namespace tomo::simd {

#if defined(TOMOKIT_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(TOMOKIT_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* pref = std::getenv("TOMOKIT_SIMD");
    if (pref != nullptr && std::string_view(pref) == "scalar") return scalar_kernels();
    if (const KernelTable* fast = avx2_kernels()) return *fast;
    return scalar_kernels();
  }();
  return chosen;
}

} // namespace tomo::simd
