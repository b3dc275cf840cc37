#pragma once

// Brute-force reference computations used to verify the model and the
// preconditioner. Written for clarity over speed; intended for matrices of
// order <= ~50.

#include <cstddef>
#include <functional>
#include <vector>

#include "qglr/matrix.hpp"

namespace qglr::oracle {

/// Position of W(class_idx, feat_idx) in the row-major flattened parameter
/// vector: class_idx·(1+d) + feat_idx.
struct FlatIndex {
  std::size_t class_idx = 0;
  std::size_t feat_idx = 0;
  std::size_t flat = 0;

  static FlatIndex from_pair(std::size_t class_idx, std::size_t feat_idx, std::size_t width);
  static FlatIndex from_flat(std::size_t flat, std::size_t width);
};

using ScalarFunction = std::function<double(const DenseMatrix&)>;

inline constexpr double kFirstOrderStep = 1e-5;
inline constexpr double kSecondOrderStep = 1e-4;

/// Central differences (f(w + h·e) − f(w − h·e)) / 2h for every coordinate.
/// Throws ParameterError when h <= 0.
DenseMatrix finite_diff_gradient(const ScalarFunction& f, const DenseMatrix& w,
                                 double h = kFirstOrderStep);

/// Exact Hessian of ln L with respect to the flattened W:
///   Σᵢ Aᵢ ⊗ (xᵢᵀxᵢ),  Aᵢ(a,b) = pᵢ,a·(pᵢ,b − δab)
/// where p = softmax(X·Wᵀ). Order c·(1+d), symmetric by construction.
DenseMatrix assemble_hessian(const DenseMatrix& x, const DenseMatrix& p);

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
/// rotations. Throws ContractError if `m` is not square or not symmetric
/// within 1e-10 (relative to its largest entry when that exceeds 1).
std::vector<double> eigenvalues_symmetric(const DenseMatrix& m);

double min_eigenvalue_symmetric(const DenseMatrix& m);
double max_eigenvalue_symmetric(const DenseMatrix& m);

/// Gauss–Jordan inverse with partial pivoting. Throws ShapeError for
/// non-square input and SingularMatrixError when a pivot falls below 1e-12.
DenseMatrix invert_small(const DenseMatrix& m);

}  // namespace qglr::oracle
