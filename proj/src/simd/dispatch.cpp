#include <cstdlib>

#include "nlde/simd/kernels.hpp"

namespace nlde::simd {

#ifdef NLDE_HAVE_AVX2
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#ifdef NLDE_HAVE_AVX2
  return &avx2_kernel_table();
#else
  return nullptr;
#endif
}

bool cpu_supports_avx2() {
#if defined(NLDE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = [] () -> const KernelTable& {
    if (std::getenv("NLDE_FORCE_SCALAR") == nullptr && avx2_kernels() != nullptr &&
        cpu_supports_avx2()) {
      return *avx2_kernels();
    }
    return scalar_kernels();
  }();
  return table;
}

}  // namespace nlde::simd
