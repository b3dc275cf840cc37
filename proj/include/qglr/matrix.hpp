#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qglr {

/// Row-major dense matrix of doubles.
///
/// Every entry is expected to stay finite; this is checked by assertions in
/// debug builds only (see `debug_check_finite`).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols, 0.0}; }
  static DenseMatrix ones(std::size_t rows, std::size_t cols) { return {rows, cols, 1.0}; }
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  /// "RxC", used in diagnostics.
  std::string shape_string() const;

  /// Exact, element-wise comparison.
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// a · b. Throws ShapeError unless a.cols() == b.rows().
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// aᵀ · b without materializing the transpose. Throws ShapeError unless
/// a.rows() == b.rows().
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& a);

/// Element-wise product. Throws ShapeError on mismatched shapes.
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);

/// Block matrix whose (i, j) block is a(i, j) · b.
DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// Largest |a(i,j) - b(i,j)|. Throws ShapeError on mismatched shapes.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op);

/// Asserts (debug builds only) that every entry of `m` is finite.
void debug_check_finite(const DenseMatrix& m);

}  // namespace qglr
