#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "qglr/simd/kernels.hpp"

namespace qglr::simd {
namespace neon {

constexpr std::size_t kLanes = 2;

static inline void axpy_row(double* c_row, double s, const double* b_row, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    // vmulq + vaddq rather than vfmaq: keeps rounding identical to scalar.
    const float64x2_t prod = vmulq_f64(vs, vld1q_f64(b_row + j));
    vst1q_f64(c_row + j, vaddq_f64(vld1q_f64(c_row + j), prod));
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
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < len; ++i) out[i] = a[i] * b[i];
}

static void subtract(const double* a, const double* b, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < len; ++i) out[i] = a[i] - b[i];
}

static void add_scaled(const double* a, double s, const double* b, double* out, std::size_t len) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(a + i), vmulq_f64(vs, vld1q_f64(b + i))));
  }
  for (; i < len; ++i) out[i] = a[i] + s * b[i];
}

static void lincomb(double alpha, const double* a, double beta, const double* b, double* out,
                    std::size_t len) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    const float64x2_t x = vmulq_f64(va, vld1q_f64(a + i));
    const float64x2_t y = vmulq_f64(vb, vld1q_f64(b + i));
    vst1q_f64(out + i, vaddq_f64(x, y));
  }
  for (; i < len; ++i) out[i] = alpha * a[i] + beta * b[i];
}

static void adagrad_update(double* w, double* gt, const double* d, double numerator, double eps,
                           std::size_t len) {
  const float64x2_t vnum = vdupq_n_f64(numerator);
  const float64x2_t veps = vdupq_n_f64(eps);
  std::size_t i = 0;
  for (; i + kLanes <= len; i += kLanes) {
    const float64x2_t vd = vld1q_f64(d + i);
    const float64x2_t vgt = vaddq_f64(vld1q_f64(gt + i), vmulq_f64(vd, vd));
    vst1q_f64(gt + i, vgt);
    const float64x2_t gamma = vdivq_f64(vnum, vsqrtq_f64(vaddq_f64(veps, vgt)));
    vst1q_f64(w + i, vaddq_f64(vld1q_f64(w + i), vmulq_f64(gamma, vd)));
  }
  for (; i < len; ++i) {
    gt[i] = gt[i] + d[i] * d[i];
    const double gamma = numerator / std::sqrt(eps + gt[i]);
    w[i] = w[i] + gamma * d[i];
  }
}

}  // namespace neon

const KernelTable& neon_kernels() {
  static const KernelTable table{SimdLevel::Neon, neon::matmul,     neon::matmul_tn,
                                 neon::hadamard,  neon::subtract,   neon::add_scaled,
                                 neon::lincomb,   neon::adagrad_update};
  return table;
}

}  // namespace qglr::simd
