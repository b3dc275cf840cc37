#include "qglr/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qglr::simd {
namespace scalar {

static void matmul(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                   std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

static void matmul_tn(const double* a, const double* b, double* c, std::size_t k, std::size_t m,
                      std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    const double* arow = a + p * m;
    const double* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const double api = arow[i];
      double* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += api * brow[j];
    }
  }
}

static void hadamard(const double* a, const double* b, double* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = a[i] * b[i];
}

static void subtract(const double* a, const double* b, double* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = a[i] - b[i];
}

static void add_scaled(const double* a, double s, const double* b, double* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = a[i] + s * b[i];
}

static void lincomb(double alpha, const double* a, double beta, const double* b, double* out,
                    std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = alpha * a[i] + beta * b[i];
}

static void adagrad_update(double* w, double* gt, const double* d, double numerator, double eps,
                           std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    gt[i] = gt[i] + d[i] * d[i];
    const double gamma = numerator / std::sqrt(eps + gt[i]);
    w[i] = w[i] + gamma * d[i];
  }
}

}  // namespace scalar

const KernelTable& scalar_kernels() {
  static const KernelTable table{SimdLevel::Scalar, scalar::matmul,     scalar::matmul_tn,
                                 scalar::hadamard,  scalar::subtract,   scalar::add_scaled,
                                 scalar::lincomb,   scalar::adagrad_update};
  return table;
}

}  // namespace qglr::simd
