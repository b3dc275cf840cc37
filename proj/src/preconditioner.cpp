#include "qglr/preconditioner.hpp"

#include <cmath>
#include <string>

#include "qglr/errors.hpp"

namespace qglr {

Preconditioner Preconditioner::from_matrix(DenseMatrix b, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("preconditioner epsilon must be > 0");
  for (double v : b.values()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParameterError("preconditioner entries must be finite and > 0");
    }
  }
  return Preconditioner(std::move(b), epsilon);
}

DenseMatrix hessian_bound(const DenseMatrix& x) { return -0.5 * matmul_tn(x, x); }

Preconditioner build_preconditioner(const DenseMatrix& x, std::size_t classes, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ParameterError("build_preconditioner: epsilon must be > 0, got " +
                         std::to_string(epsilon));
  }
  if (classes == 0) throw ParameterError("build_preconditioner: class count must be > 0");

  const DenseMatrix h = hessian_bound(x);
  const std::size_t width = h.cols();
  DenseMatrix b(classes, width);
  for (std::size_t j = 0; j < width; ++j) {
    double acc = epsilon;
    for (std::size_t i = 0; i < width; ++i) acc += std::abs(h(i, j));
    const double inv = 1.0 / acc;
    for (std::size_t k = 0; k < classes; ++k) b(k, j) = inv;
  }
  return Preconditioner(std::move(b), epsilon);
}

DenseMatrix quadratic_gradient(const Preconditioner& b, const DenseMatrix& g) {
  return hadamard(b.matrix(), g);
}

}  // namespace qglr
