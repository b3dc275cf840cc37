#include "qglr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qglr/errors.hpp"

namespace qglr::oracle {

FlatIndex FlatIndex::from_pair(std::size_t class_idx, std::size_t feat_idx, std::size_t width) {
  if (feat_idx >= width) throw RangeError("FlatIndex: feature index out of range");
  return {class_idx, feat_idx, class_idx * width + feat_idx};
}

FlatIndex FlatIndex::from_flat(std::size_t flat, std::size_t width) {
  if (width == 0) throw RangeError("FlatIndex: zero width");
  return {flat / width, flat % width, flat};
}

DenseMatrix finite_diff_gradient(const ScalarFunction& f, const DenseMatrix& w, double h) {
  if (!(h > 0.0)) throw ParameterError("finite_diff_gradient: step must be > 0");
  DenseMatrix grad(w.rows(), w.cols());
  DenseMatrix probe = w;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double orig = w.values()[i];
    probe.values()[i] = orig + h;
    const double up = f(probe);
    probe.values()[i] = orig - h;
    const double down = f(probe);
    probe.values()[i] = orig;
    grad.values()[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

DenseMatrix assemble_hessian(const DenseMatrix& x, const DenseMatrix& p) {
  if (x.rows() != p.rows()) {
    throw ShapeError("assemble_hessian: features " + x.shape_string() + " vs probabilities " +
                     p.shape_string());
  }
  const std::size_t c = p.cols();
  const std::size_t width = x.cols();
  DenseMatrix h(c * width, c * width);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    DenseMatrix coeff(c, c);
    for (std::size_t a = 0; a < c; ++a) {
      for (std::size_t b = 0; b < c; ++b) {
        coeff(a, b) = a == b ? p(i, a) * (p(i, a) - 1.0) : p(i, a) * p(i, b);
      }
    }
    DenseMatrix outer(width, width);
    for (std::size_t r = 0; r < width; ++r) {
      for (std::size_t s = 0; s < width; ++s) outer(r, s) = x(i, r) * x(i, s);
    }
    h = h + kronecker(coeff, outer);
  }
  return h;
}

std::vector<double> eigenvalues_symmetric(const DenseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ContractError("eigenvalues_symmetric: matrix " + m.shape_string() + " is not square");
  }
  const std::size_t n = m.rows();
  double scale = 1.0;
  for (double v : m.values()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-10 * scale) {
        throw ContractError("eigenvalues_symmetric: matrix is not symmetric");
      }
    }
  }

  DenseMatrix a = m;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };
  double frob = 0.0;
  for (double v : a.values()) frob += v * v;
  // Absolute 1e-12, unless the matrix is so large that rounding alone
  // keeps the off-diagonal mass above it.
  const double tol = std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon() * std::sqrt(frob));

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double min_eigenvalue_symmetric(const DenseMatrix& m) {
  const auto eig = eigenvalues_symmetric(m);
  if (eig.empty()) throw ContractError("min_eigenvalue_symmetric: empty matrix");
  return eig.front();
}

double max_eigenvalue_symmetric(const DenseMatrix& m) {
  const auto eig = eigenvalues_symmetric(m);
  if (eig.empty()) throw ContractError("max_eigenvalue_symmetric: empty matrix");
  return eig.back();
}

DenseMatrix invert_small(const DenseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("invert_small: matrix " + m.shape_string() + " is not square");
  }
  const std::size_t n = m.rows();
  DenseMatrix a = m;
  DenseMatrix inv = DenseMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) < 1e-12) {
      throw SingularMatrixError("invert_small: pivot below 1e-12 in column " +
                                std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(pivot, k), a(col, k));
        std::swap(inv(pivot, k), inv(col, k));
      }
    }
    const double d = a(col, col);
    for (std::size_t k = 0; k < n; ++k) {
      a(col, k) /= d;
      inv(col, k) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(col, k);
        inv(r, k) -= f * inv(col, k);
      }
    }
  }
  return inv;
}

}  // namespace qglr::oracle
