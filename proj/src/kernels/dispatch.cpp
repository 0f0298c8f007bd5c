#include <cstdlib>
#include <string>

#include "steady/kernels.hpp"

namespace steady::kernels {

#if defined(STEADY_BUILD_AVX2)
const FvKernels& avx2_kernels_impl();
#endif

const FvKernels* avx2_kernels() {
#if defined(STEADY_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const FvKernels* kernels_by_name(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return avx2_kernels();
  return nullptr;
}

const FvKernels& active_kernels() {
  static const FvKernels* chosen = [] {
    const char* env = std::getenv("STEADY_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return &scalar_kernels();
    if (const FvKernels* k = avx2_kernels()) return k;
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace steady::kernels
