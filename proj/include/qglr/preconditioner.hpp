#pragma once

#include <cstddef>

#include "qglr/matrix.hpp"

namespace qglr {

inline constexpr double kDefaultEpsilon = 1e-8;

/// Diagonal preconditioner B̄ stored in the shape of W (c × (1+d)).
///
/// For the bound H̄ = −½·XᵀX, entry (i, j) is 1 / (ε + Σₖ |H̄(k, j)|), the
/// same for every class row i. Built once per training run.
class Preconditioner {
 public:
  /// Wraps an arbitrary strictly positive matrix. Throws ParameterError if an
  /// entry is not > 0 or epsilon is not > 0.
  static Preconditioner from_matrix(DenseMatrix b, double epsilon);

  const DenseMatrix& matrix() const noexcept { return b_; }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t classes() const noexcept { return b_.rows(); }

 private:
  Preconditioner(DenseMatrix b, double epsilon) : b_(std::move(b)), epsilon_(epsilon) {}
  DenseMatrix b_;
  double epsilon_;

  friend Preconditioner build_preconditioner(const DenseMatrix&, std::size_t, double);
};

/// H̄ = −½·XᵀX, the fixed lower bound on the Hessian's (1+d)×(1+d) factor.
DenseMatrix hessian_bound(const DenseMatrix& x);

/// Builds B̄ from the bias-augmented, [0,1]-scaled design matrix.
/// Throws ParameterError when epsilon <= 0 or classes == 0.
Preconditioner build_preconditioner(const DenseMatrix& x, std::size_t classes,
                                    double epsilon = kDefaultEpsilon);

/// G = B̄ ⊙ g. Throws ShapeError on mismatched shapes.
DenseMatrix quadratic_gradient(const Preconditioner& b, const DenseMatrix& g);

}  // namespace qglr
