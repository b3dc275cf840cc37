#pragma once

#include <cstddef>
#include <vector>

#include "qglr/dataset.hpp"
#include "qglr/matrix.hpp"

namespace qglr {

// Multinomial logistic regression with parameter matrix W (c × (1+d), row k
// is the weight vector of class k). Row-major flattening of W gives the
// parameter vector ordering used by the Hessian oracle.

/// Z = X · Wᵀ, shape n × c.
DenseMatrix logits(const DenseMatrix& x, const DenseMatrix& w);

/// Row-wise softmax. Each row's maximum is subtracted before exponentiating,
/// so rows sum to 1 even for very large logits. Entries lie in [0, 1]; an
/// entry is exactly 0 only if its exponential underflows.
DenseMatrix softmax_rows(const DenseMatrix& z);

/// ln L = Σᵢ [zᵢ,yᵢ − logsumexp(zᵢ)], the objective being maximized.
/// Not averaged over samples.
double log_likelihood(const DenseMatrix& x, const OneHotLabels& y, const DenseMatrix& w);

/// Same quantity from precomputed logits.
double log_likelihood_from_logits(const DenseMatrix& z, const OneHotLabels& y);

/// (Ȳ − P)ᵀ · X, the ascent direction of ln L; shape c × (1+d).
DenseMatrix gradient(const DenseMatrix& x, const OneHotLabels& y, const DenseMatrix& p);

/// Index of the largest entry of each row; ties go to the lowest index.
std::vector<std::size_t> argmax_rows(const DenseMatrix& p);

/// Fraction of rows whose most probable class equals the label.
double accuracy_from_probs(const DenseMatrix& p, const std::vector<std::size_t>& labels);

double predict_accuracy(const DenseMatrix& x, const std::vector<std::size_t>& labels,
                        const DenseMatrix& w);

/// Loss and accuracy of W on a dataset, sharing one logits/softmax pass.
struct Evaluation {
  double log_likelihood = 0.0;
  double accuracy = 0.0;
  DenseMatrix probabilities;
};
Evaluation evaluate(const Dataset& data, const OneHotLabels& y, const DenseMatrix& w);

}  // namespace qglr
