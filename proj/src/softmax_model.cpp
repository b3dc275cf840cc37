#include "qglr/softmax_model.hpp"

#include <algorithm>
#include <cmath>

#include "qglr/errors.hpp"

namespace qglr {

DenseMatrix logits(const DenseMatrix& x, const DenseMatrix& w) {
  if (x.cols() != w.cols()) {
    throw ShapeError("logits: features " + x.shape_string() + " vs weights " + w.shape_string());
  }
  return matmul(x, transpose(w));
}

DenseMatrix softmax_rows(const DenseMatrix& z) {
  DenseMatrix p(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const auto zi = z.row(i);
    auto pi = p.row(i);
    if (zi.empty()) continue;
    const double shift = *std::max_element(zi.begin(), zi.end());
    double rowsum = 0.0;
    for (std::size_t j = 0; j < zi.size(); ++j) {
      pi[j] = std::exp(zi[j] - shift);
      rowsum += pi[j];
    }
    for (double& v : pi) v /= rowsum;
  }
  return p;
}

double log_likelihood_from_logits(const DenseMatrix& z, const OneHotLabels& y) {
  require_same_shape(z, y.y, "log_likelihood");
  double total = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const auto zi = z.row(i);
    const auto yi = y.y.row(i);
    const double shift = *std::max_element(zi.begin(), zi.end());
    double sum_exp = 0.0;
    double true_logit = 0.0;
    for (std::size_t k = 0; k < zi.size(); ++k) {
      sum_exp += std::exp(zi[k] - shift);
      true_logit += yi[k] * zi[k];
    }
    total += true_logit - (shift + std::log(sum_exp));
  }
  return total;
}

double log_likelihood(const DenseMatrix& x, const OneHotLabels& y, const DenseMatrix& w) {
  return log_likelihood_from_logits(logits(x, w), y);
}

DenseMatrix gradient(const DenseMatrix& x, const OneHotLabels& y, const DenseMatrix& p) {
  require_same_shape(y.y, p, "gradient");
  if (x.rows() != p.rows()) {
    throw ShapeError("gradient: features " + x.shape_string() + " vs probabilities " +
                     p.shape_string());
  }
  return matmul_tn(y.y - p, x);
}

std::vector<std::size_t> argmax_rows(const DenseMatrix& p) {
  std::vector<std::size_t> out(p.rows(), 0);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto pi = p.row(i);
    // max_element returns the first maximum, i.e. the lowest class index.
    out[i] = static_cast<std::size_t>(std::max_element(pi.begin(), pi.end()) - pi.begin());
  }
  return out;
}

double accuracy_from_probs(const DenseMatrix& p, const std::vector<std::size_t>& labels) {
  if (labels.size() != p.rows()) {
    throw ShapeError("accuracy: " + std::to_string(labels.size()) + " labels for " +
                     p.shape_string() + " probabilities");
  }
  if (labels.empty()) return 0.0;
  const auto predicted = argmax_rows(p);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += predicted[i] == labels[i];
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double predict_accuracy(const DenseMatrix& x, const std::vector<std::size_t>& labels,
                        const DenseMatrix& w) {
  return accuracy_from_probs(softmax_rows(logits(x, w)), labels);
}

Evaluation evaluate(const Dataset& data, const OneHotLabels& y, const DenseMatrix& w) {
  const DenseMatrix z = logits(data.x, w);
  Evaluation e;
  e.log_likelihood = log_likelihood_from_logits(z, y);
  e.probabilities = softmax_rows(z);
  e.accuracy = accuracy_from_probs(e.probabilities, data.labels);
  return e;
}

}  // namespace qglr
