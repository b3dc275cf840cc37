#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qglr/dataset.hpp"
#include "qglr/matrix.hpp"
#include "qglr/preconditioner.hpp"

namespace qglr {

/// Full-batch ascent methods on ln L.
///   SFHNewton  W ← W + B̄⊙g
///   NAG        Nesterov schedule driven by baseLr·g
///   NAGQG      Nesterov schedule driven by B̄⊙g
///   Adagrad    Adagrad driven by baseLr·g
///   AdagradQG  Adagrad driven by B̄⊙g
enum class OptimizerKind { SFHNewton, NAG, NAGQG, Adagrad, AdagradQG };

std::string_view to_string(OptimizerKind kind);
/// Accepts the names produced by to_string. Throws ParameterError otherwise.
OptimizerKind parse_optimizer_kind(std::string_view name);

inline constexpr double kInitialAlpha = 0.01;
inline constexpr double kDefaultBaseLr = 0.01;
inline constexpr double kDefaultAdagradNumerator = 1.0 + 0.01;

struct TrainConfig {
  std::size_t iterations = 30;
  double epsilon = kDefaultEpsilon;
  OptimizerKind kind = OptimizerKind::SFHNewton;
  double base_lr = kDefaultBaseLr;
  double adagrad_numerator = kDefaultAdagradNumerator;

  /// Throws ParameterError when iterations == 0, epsilon <= 0 or base_lr <= 0.
  void validate() const;
};

/// Mutable state of one training run.
struct OptimizerState {
  OptimizerKind kind = OptimizerKind::SFHNewton;
  DenseMatrix w;   // returned parameters
  DenseMatrix v;   // NAG variants: previous un-extrapolated iterate
  DenseMatrix gt;  // Adagrad variants: running sum of squared steps
  double alpha0 = kInitialAlpha;
  double alpha1 = 0.0;
  std::size_t count = 1;
  std::size_t samples = 0;  // n, enters NAG's γ = 1/(n·count)
  double base_lr = kDefaultBaseLr;
  double epsilon = kDefaultEpsilon;
  double adagrad_numerator = kDefaultAdagradNumerator;
};

/// α₁ = ½(1 + √(1 + 4α₀²))
double next_alpha(double alpha0);

/// Nesterov mixing weight η = (1 − α₀) / α₁ for the current state.
double nesterov_eta(const OptimizerState& state);
/// Extrapolation boost γ = 1 / (n·count).
double nesterov_gamma(const OptimizerState& state);

/// W = V = Gt = 0 (c × (1+d)), α₀ = 0.01, α₁ = next_alpha(α₀), count = 1.
OptimizerState init_state(OptimizerKind kind, std::size_t samples, std::size_t classes,
                          std::size_t features, const TrainConfig& config);

// Single steps. Each takes the gradient g = (Ȳ − P)ᵀX at the point the method
// evaluates (W for SFH-Newton and Adagrad, V for the NAG variants; see
// gradient_point) and returns the advanced state. Throws ShapeError on
// mismatched shapes and ParameterError when state.kind does not match.
OptimizerState step_sfh_newton(OptimizerState state, const DenseMatrix& g,
                               const Preconditioner& b);
OptimizerState step_enhanced_nag(OptimizerState state, const DenseMatrix& g,
                                 const Preconditioner& b);
OptimizerState step_enhanced_adagrad(OptimizerState state, const DenseMatrix& g,
                                     const Preconditioner& b);
OptimizerState step_plain_nag(OptimizerState state, const DenseMatrix& g);
OptimizerState step_plain_adagrad(OptimizerState state, const DenseMatrix& g);

/// Dispatches on state.kind.
OptimizerState step(OptimizerState state, const DenseMatrix& g, const Preconditioner& b);

/// Parameters at which the next gradient must be evaluated.
const DenseMatrix& gradient_point(const OptimizerState& state);

/// Metrics of W after `iteration` updates (0 = initial state).
struct MetricSample {
  std::size_t iteration = 0;
  double log_likelihood = 0.0;
  double accuracy = 0.0;

  friend bool operator==(const MetricSample&, const MetricSample&) = default;
};

struct TrainResult {
  DenseMatrix w;
  std::vector<MetricSample> records;  // iterations 0..κ
};

/// Runs config.iterations full-batch updates from W = 0.
/// `precond` is built from data.x when not supplied.
TrainResult train(const Dataset& data, const OneHotLabels& y, const TrainConfig& config,
                  const std::optional<Preconditioner>& precond = {});

}  // namespace qglr
