#include "qglr/optimizers.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qglr/errors.hpp"
#include "qglr/simd/kernels.hpp"
#include "qglr/softmax_model.hpp"

namespace qglr {
namespace {

constexpr std::array<std::pair<OptimizerKind, std::string_view>, 5> kNames{{
    {OptimizerKind::SFHNewton, "SFHNewton"},
    {OptimizerKind::NAG, "NAG"},
    {OptimizerKind::NAGQG, "NAGQG"},
    {OptimizerKind::Adagrad, "Adagrad"},
    {OptimizerKind::AdagradQG, "AdagradQG"},
}};

void require_kind(const OptimizerState& state, OptimizerKind expected, const char* op) {
  if (state.kind != expected) {
    throw ParameterError(std::string(op) + ": state is for " + std::string(to_string(state.kind)) +
                         ", expected " + std::string(to_string(expected)));
  }
}

DenseMatrix scaled(const DenseMatrix& g, double s) {
  DenseMatrix out(g.rows(), g.cols());
  const auto in = g.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < in.size(); ++i) dst[i] = s * in[i];
  return out;
}

// Shared Nesterov update on direction `dir` (B̄⊙g or baseLr·g).
void nesterov_update(OptimizerState& s, const DenseMatrix& dir) {
  require_same_shape(s.w, dir, "nag step");
  const auto& k = simd::active_kernels();
  const double eta = nesterov_eta(s);
  const double gamma = nesterov_gamma(s);

  DenseMatrix w_temp(s.w.rows(), s.w.cols());
  k.add_scaled(s.w.values().data(), 1.0 + gamma, dir.values().data(), w_temp.values().data(),
               w_temp.size());
  k.lincomb(1.0 - eta, w_temp.values().data(), eta, s.v.values().data(), s.w.values().data(),
            s.w.size());
  s.v = std::move(w_temp);

  s.alpha0 = s.alpha1;
  s.alpha1 = next_alpha(s.alpha0);
  ++s.count;
}

void adagrad_update(OptimizerState& s, const DenseMatrix& dir) {
  require_same_shape(s.w, dir, "adagrad step");
  simd::active_kernels().adagrad_update(s.w.values().data(), s.gt.values().data(),
                                        dir.values().data(), s.adagrad_numerator, s.epsilon,
                                        s.w.size());
  ++s.count;
}

}  // namespace

std::string_view to_string(OptimizerKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ParameterError("unknown optimizer '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  if (iterations == 0) throw ParameterError("iterations must be >= 1");
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  if (!(base_lr > 0.0)) throw ParameterError("base learning rate must be > 0");
  if (!(adagrad_numerator > 0.0)) throw ParameterError("adagrad numerator must be > 0");
}

double next_alpha(double alpha0) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * alpha0 * alpha0)); }

double nesterov_eta(const OptimizerState& state) { return (1.0 - state.alpha0) / state.alpha1; }

double nesterov_gamma(const OptimizerState& state) {
  if (state.samples == 0) throw ParameterError("nesterov_gamma: sample count is 0");
  return 1.0 / (static_cast<double>(state.samples) * static_cast<double>(state.count));
}

OptimizerState init_state(OptimizerKind kind, std::size_t samples, std::size_t classes,
                          std::size_t features, const TrainConfig& config) {
  OptimizerState s;
  s.kind = kind;
  s.w = DenseMatrix::zeros(classes, features + 1);
  s.v = DenseMatrix::zeros(classes, features + 1);
  s.gt = DenseMatrix::zeros(classes, features + 1);
  s.alpha0 = kInitialAlpha;
  s.alpha1 = next_alpha(s.alpha0);
  s.count = 1;
  s.samples = samples;
  s.base_lr = config.base_lr;
  s.epsilon = config.epsilon;
  s.adagrad_numerator = config.adagrad_numerator;
  return s;
}

OptimizerState step_sfh_newton(OptimizerState state, const DenseMatrix& g,
                               const Preconditioner& b) {
  require_kind(state, OptimizerKind::SFHNewton, "step_sfh_newton");
  const DenseMatrix qg = quadratic_gradient(b, g);
  require_same_shape(state.w, qg, "sfh-newton step");
  simd::active_kernels().add_scaled(state.w.values().data(), 1.0, qg.values().data(),
                                    state.w.values().data(), state.w.size());
  ++state.count;
  return state;
}

OptimizerState step_enhanced_nag(OptimizerState state, const DenseMatrix& g,
                                 const Preconditioner& b) {
  require_kind(state, OptimizerKind::NAGQG, "step_enhanced_nag");
  nesterov_update(state, quadratic_gradient(b, g));
  return state;
}

OptimizerState step_enhanced_adagrad(OptimizerState state, const DenseMatrix& g,
                                     const Preconditioner& b) {
  require_kind(state, OptimizerKind::AdagradQG, "step_enhanced_adagrad");
  adagrad_update(state, quadratic_gradient(b, g));
  return state;
}

OptimizerState step_plain_nag(OptimizerState state, const DenseMatrix& g) {
  require_kind(state, OptimizerKind::NAG, "step_plain_nag");
  nesterov_update(state, scaled(g, state.base_lr));
  return state;
}

OptimizerState step_plain_adagrad(OptimizerState state, const DenseMatrix& g) {
  require_kind(state, OptimizerKind::Adagrad, "step_plain_adagrad");
  adagrad_update(state, scaled(g, state.base_lr));
  return state;
}

OptimizerState step(OptimizerState state, const DenseMatrix& g, const Preconditioner& b) {
  switch (state.kind) {
    case OptimizerKind::SFHNewton: return step_sfh_newton(std::move(state), g, b);
    case OptimizerKind::NAG: return step_plain_nag(std::move(state), g);
    case OptimizerKind::NAGQG: return step_enhanced_nag(std::move(state), g, b);
    case OptimizerKind::Adagrad: return step_plain_adagrad(std::move(state), g);
    case OptimizerKind::AdagradQG: return step_enhanced_adagrad(std::move(state), g, b);
  }
  throw ParameterError("step: unknown optimizer kind");
}

const DenseMatrix& gradient_point(const OptimizerState& state) {
  const bool nesterov = state.kind == OptimizerKind::NAG || state.kind == OptimizerKind::NAGQG;
  return nesterov ? state.v : state.w;
}

TrainResult train(const Dataset& data, const OneHotLabels& y, const TrainConfig& config,
                  const std::optional<Preconditioner>& precond) {
  config.validate();
  if (y.y.rows() != data.sample_count() || y.y.cols() != data.classes) {
    throw ShapeError("train: labels " + y.y.shape_string() + " do not match " +
                     std::to_string(data.sample_count()) + " samples x " +
                     std::to_string(data.classes) + " classes");
  }
  const Preconditioner b =
      precond ? *precond : build_preconditioner(data.x, data.classes, config.epsilon);

  OptimizerState state =
      init_state(config.kind, data.sample_count(), data.classes, data.feature_count(), config);

  TrainResult result;
  result.records.reserve(config.iterations + 1);

  Evaluation current = evaluate(data, y, state.w);
  result.records.push_back({0, current.log_likelihood, current.accuracy});

  for (std::size_t it = 1; it <= config.iterations; ++it) {
    // W and V coincide for the non-Nesterov methods, so the probabilities
    // from the last evaluation can be reused for their gradient.
    const bool reuse = &gradient_point(state) == &state.w;
    const DenseMatrix p =
        reuse ? std::move(current.probabilities) : softmax_rows(logits(data.x, state.v));
    const DenseMatrix g = gradient(data.x, y, p);
    state = step(std::move(state), g, b);
    current = evaluate(data, y, state.w);
    result.records.push_back({it, current.log_likelihood, current.accuracy});
  }
  result.w = std::move(state.w);
  return result;
}

}  // namespace qglr
