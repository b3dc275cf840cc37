// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "qglr/simd/kernels.hpp"

namespace qglr::simd {
namespace avx2 {

constexpr std::size_t kLanes = 4;

// c_row[0..n) += s * b_row[0..n)
static inline void axpy_row(double* c_row, double s, const double* b_row, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    const __m256d prod = _mm256_mul_pd(vs, _mm256_loadu_pd(b_row + j));
    _mm256_storeu_pd(c_row + j, _mm256_add_pd(_mm256_loadu_pd(c_row + j), prod));
  }
  for (; j < n; ++j) c_row[j] += s * b_row[j];
}

static void matmul(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                   std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) axpy_row(c + i * n, a[i * k + p], b + p * n, n);
  }
}

static void matmul_tn(const double* a, const double* b, double* c, std::size_t k, std::size_t m,
                      std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t i = 0; i < m; ++i) axpy_row(c + i * n, a[p * m + i], b + p * n, n);
  }
}

static void hadamard(const double* a, const double* b, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < len; ++i) out[i] = a[i] * b[i];
}

static void subtract(const double* a, const double* b, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < len; ++i) out[i] = a[i] - b[i];
}

static void add_scaled(const double* a, double s, const double* b, double* out, std::size_t len) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(vs, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), prod));
  }
  for (; i < len; ++i) out[i] = a[i] + s * b[i];
}

static void lincomb(double alpha, const double* a, double beta, const double* b, double* out,
                    std::size_t len) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    const __m256d x = _mm256_mul_pd(va, _mm256_loadu_pd(a + i));
    const __m256d y = _mm256_mul_pd(vb, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(x, y));
  }
  for (; i < len; ++i) out[i] = alpha * a[i] + beta * b[i];
}

static void adagrad_update(double* w, double* gt, const double* d, double numerator, double eps,
                           std::size_t len) {
  const __m256d vnum = _mm256_set1_pd(numerator);
  const __m256d veps = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    const __m256d vd = _mm256_loadu_pd(d + i);
    const __m256d vgt = _mm256_add_pd(_mm256_loadu_pd(gt + i), _mm256_mul_pd(vd, vd));
    _mm256_storeu_pd(gt + i, vgt);
    const __m256d gamma = _mm256_div_pd(vnum, _mm256_sqrt_pd(_mm256_add_pd(veps, vgt)));
    _mm256_storeu_pd(w + i, _mm256_add_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(gamma, vd)));
  }
  for (; i < len; ++i) {
    gt[i] = gt[i] + d[i] * d[i];
    const double gamma = numerator / std::sqrt(eps + gt[i]);
    w[i] = w[i] + gamma * d[i];
  }
}

}  // namespace avx2

const KernelTable& avx2_kernels() {
  static const KernelTable table{SimdLevel::Avx2, avx2::matmul,     avx2::matmul_tn,
                                 avx2::hadamard,  avx2::subtract,   avx2::add_scaled,
                                 avx2::lincomb,   avx2::adagrad_update};
  return table;
}

}  // namespace qglr::simd
