#include <cstdlib>
#include <string_view>

#include "qglr/simd/kernels.hpp"

namespace qglr::simd {

#if defined(QGLR_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(QGLR_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

std::string_view to_string(SimdLevel level) {
  switch (level) {
    case SimdLevel::Scalar: return "scalar";
    case SimdLevel::Avx2: return "avx2";
    case SimdLevel::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable* kernels_for(SimdLevel level) {
  switch (level) {
    case SimdLevel::Scalar:
      return &scalar_kernels();
    case SimdLevel::Avx2:
#if defined(QGLR_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &avx2_kernels();
#endif
      return nullptr;
    case SimdLevel::Neon:
#if defined(QGLR_HAVE_NEON)
      return &neon_kernels();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

static const KernelTable& select_kernels() {
  if (const char* env = std::getenv("QGLR_SIMD")) {
    const std::string_view want{env};
    for (SimdLevel level : {SimdLevel::Scalar, SimdLevel::Avx2, SimdLevel::Neon}) {
      if (want == to_string(level)) {
        if (const KernelTable* t = kernels_for(level)) return *t;
      }
    }
  }
  for (SimdLevel level : {SimdLevel::Avx2, SimdLevel::Neon}) {
    if (const KernelTable* t = kernels_for(level)) return *t;
  }
  return scalar_kernels();
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace qglr::simd
