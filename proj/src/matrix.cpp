#include "qglr/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "qglr/errors.hpp"
#include "qglr/simd/kernels.hpp"

namespace qglr {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("DenseMatrix: " + std::to_string(data_.size()) +
                     " values cannot fill a " + shape_string() + " matrix");
  }
  debug_check_finite(*this);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("DenseMatrix: ragged initializer rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  debug_check_finite(*this);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string DenseMatrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_string() + " vs " +
                     b.shape_string());
  }
}

void debug_check_finite([[maybe_unused]] const DenseMatrix& m) {
#ifndef NDEBUG
  for (double v : m.values()) assert(std::isfinite(v) && "DenseMatrix entry is not finite");
#endif
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: cannot multiply " + a.shape_string() + " by " + b.shape_string());
  }
  DenseMatrix c(a.rows(), b.cols());
  simd::active_kernels().matmul(a.values().data(), b.values().data(), c.values().data(),
                                a.rows(), a.cols(), b.cols());
  debug_check_finite(c);
  return c;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw ShapeError("matmul_tn: cannot multiply transpose of " + a.shape_string() + " by " +
                     b.shape_string());
  }
  DenseMatrix c(a.cols(), b.cols());
  simd::active_kernels().matmul_tn(a.values().data(), b.values().data(), c.values().data(),
                                   a.rows(), a.cols(), b.cols());
  debug_check_finite(c);
  return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "hadamard");
  DenseMatrix out(a.rows(), a.cols());
  simd::active_kernels().hadamard(a.values().data(), b.values().data(), out.values().data(),
                                  a.size());
  debug_check_finite(out);
  return out;
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double s = a(i, j);
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q = 0; q < b.cols(); ++q) {
          k(i * b.rows() + p, j * b.cols() + q) = s * b(p, q);
        }
      }
    }
  }
  debug_check_finite(k);
  return k;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "add");
  DenseMatrix out(a.rows(), a.cols());
  simd::active_kernels().add_scaled(a.values().data(), 1.0, b.values().data(),
                                    out.values().data(), a.size());
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "subtract");
  DenseMatrix out(a.rows(), a.cols());
  simd::active_kernels().subtract(a.values().data(), b.values().data(), out.values().data(),
                                  a.size());
  return out;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix out(a.rows(), a.cols());
  std::transform(a.values().begin(), a.values().end(), out.values().begin(),
                 [s](double v) { return s * v; });
  debug_check_finite(out);
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

}  // namespace qglr
