#pragma once

// Arithmetic kernels behind DenseMatrix and the optimizer updates.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, a vector implementation (AVX2 on x86-64, NEON on AArch64).
// Vector versions only parallelize across independent output elements and
// never fuse multiply-add, so every output is produced by the same sequence
// of IEEE operations as the scalar reference: results are bit-identical.

#include <cstddef>
#include <string_view>

namespace qglr::simd {

enum class SimdLevel { Scalar, Avx2, Neon };

std::string_view to_string(SimdLevel level);

struct KernelTable {
  SimdLevel level;

  /// c[m×n] = a[m×k] · b[k×n]; each c(i,j) accumulates p = 0..k-1 in order.
  void (*matmul)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                 std::size_t n);

  /// c[m×n] = aᵀ · b with a[k×m], b[k×n]; each c(i,j) accumulates p = 0..k-1 in order.
  void (*matmul_tn)(const double* a, const double* b, double* c, std::size_t k, std::size_t m,
                    std::size_t n);

  /// out = a ⊙ b
  void (*hadamard)(const double* a, const double* b, double* out, std::size_t len);

  /// out = a - b
  void (*subtract)(const double* a, const double* b, double* out, std::size_t len);

  /// out = a + s·b
  void (*add_scaled)(const double* a, double s, const double* b, double* out, std::size_t len);

  /// out = alpha·a + beta·b
  void (*lincomb)(double alpha, const double* a, double beta, const double* b, double* out,
                  std::size_t len);

  /// gt += d⊙d; w += (numerator / sqrt(eps + gt)) ⊙ d
  void (*adagrad_update)(double* w, double* gt, const double* d, double numerator, double eps,
                         std::size_t len);
};

/// Scalar reference kernels; always available.
const KernelTable& scalar_kernels();

/// Kernels for `level`, or nullptr when this build or CPU cannot run them.
const KernelTable* kernels_for(SimdLevel level);

/// Best table for the running CPU, chosen once. The environment variable
/// QGLR_SIMD=scalar|avx2|neon overrides the choice when that level is usable.
const KernelTable& active_kernels();

}  // namespace qglr::simd
