#include "qglr/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>

#include "qglr/errors.hpp"
#include "qglr/preconditioner.hpp"

namespace qglr {

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Adagrad: return "adagrad";
    case Suite::Nag: return "nag";
    case Suite::All: return "all";
  }
  return "unknown";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::Adagrad, Suite::Nag, Suite::All}) {
    if (name == to_string(s)) return s;
  }
  throw ParameterError("unknown suite '" + std::string(name) + "' (expected adagrad, nag or all)");
}

std::vector<OptimizerKind> optimizers_in(Suite suite) {
  switch (suite) {
    case Suite::Adagrad:
      return {OptimizerKind::SFHNewton, OptimizerKind::Adagrad, OptimizerKind::AdagradQG};
    case Suite::Nag:
      return {OptimizerKind::SFHNewton, OptimizerKind::NAG, OptimizerKind::NAGQG};
    case Suite::All:
      return {OptimizerKind::SFHNewton, OptimizerKind::NAG, OptimizerKind::NAGQG,
              OptimizerKind::Adagrad, OptimizerKind::AdagradQG};
  }
  return {};
}

std::string_view to_string(Metric metric) { return metric == Metric::Loss ? "LOSS" : "PREC"; }

std::string format_sig6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

ExperimentResult run_experiment(const Dataset& data, const ExperimentSpec& spec,
                                std::string dataset_name) {
  const OneHotLabels y = one_hot(data.labels, data.classes);
  const Preconditioner b = build_preconditioner(data.x, data.classes, spec.epsilon);

  ExperimentResult result;
  result.dataset_name = std::move(dataset_name);
  result.samples = data.sample_count();
  result.features = data.feature_count();
  result.classes = data.classes;
  result.records.resize(spec.iterations + 1);
  for (std::size_t i = 0; i <= spec.iterations; ++i) result.records[i].iteration = i;

  for (OptimizerKind kind : optimizers_in(spec.suite)) {
    TrainConfig config;
    config.iterations = spec.iterations;
    config.epsilon = spec.epsilon;
    config.base_lr = spec.base_lr;
    config.kind = kind;
    TrainResult run = train(data, y, config, b);

    const std::string name{to_string(kind)};
    for (const MetricSample& m : run.records) {
      result.records[m.iteration].loss[name] = m.log_likelihood;
      result.records[m.iteration].prec[name] = m.accuracy;
    }
    result.final_weights.emplace(name, std::move(run.w));
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.iterations == 0) throw ParameterError("iterations must be >= 1");
  const Dataset data = load_dataset(spec.dataset_path, spec.feature_count_hint);
  return run_experiment(data, spec, spec.dataset_path.filename().string());
}

std::string csv_column_name(OptimizerKind kind, Suite suite) {
  if (kind == OptimizerKind::SFHNewton && suite == Suite::Nag) return "SFHN";
  return std::string(to_string(kind));
}

std::string format_csv(const std::vector<IterationRecord>& records, Metric metric, Suite suite) {
  if (suite == Suite::All) throw ParameterError("format_csv: pick the adagrad or nag suite");
  if (records.empty()) throw ParameterError("format_csv: no records");
  const auto kinds = optimizers_in(suite);

  std::string out = "Iterations";
  for (OptimizerKind k : kinds) out += "," + csv_column_name(k, suite);
  out += '\n';
  for (const IterationRecord& r : records) {
    const auto& series = metric == Metric::Loss ? r.loss : r.prec;
    out += std::to_string(r.iteration);
    for (OptimizerKind k : kinds) {
      const auto it = series.find(std::string(to_string(k)));
      if (it == series.end()) {
        throw ParameterError("format_csv: no " + std::string(to_string(k)) +
                             " value at iteration " + std::to_string(r.iteration));
      }
      out += "," + format_sig6(it->second);
    }
    out += '\n';
  }
  return out;
}

std::filesystem::path emit_csv(const std::vector<IterationRecord>& records, Metric metric,
                               Suite suite, const std::filesystem::path& out_dir,
                               const std::string& dataset_name) {
  const std::string body = format_csv(records, metric, suite);
  const auto path = out_dir / (dataset_name + "_" + std::string(to_string(metric)) + "_" +
                               std::string(to_string(suite)) + ".csv");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(path.string() + ": cannot open for writing");
  f << body;
  f.flush();
  if (!f) throw std::runtime_error(path.string() + ": write failed");
  return path;
}

std::vector<std::filesystem::path> emit_all_csv(const ExperimentResult& result, Suite suite,
                                                const std::filesystem::path& out_dir) {
  std::vector<Suite> file_suites;
  if (suite == Suite::All) {
    file_suites = {Suite::Adagrad, Suite::Nag};
  } else {
    file_suites = {suite};
  }
  std::vector<std::filesystem::path> written;
  for (Suite s : file_suites) {
    for (Metric m : {Metric::Loss, Metric::Prec}) {
      written.push_back(emit_csv(result.records, m, s, out_dir, result.dataset_name));
    }
  }
  return written;
}

void dump_weights(const DenseMatrix& w, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(path.string() + ": cannot open for writing");
  char buf[32];
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", w(i, j));
      f << (j == 0 ? "" : " ") << buf;
    }
    f << '\n';
  }
  if (!f) throw std::runtime_error(path.string() + ": write failed");
}

void print_summary(std::ostream& out, const std::vector<ExperimentResult>& results) {
  out << std::left << std::setw(22) << "dataset" << std::setw(8) << "n" << std::setw(5) << "d"
      << std::setw(4) << "c" << std::setw(12) << "optimizer" << std::setw(6) << "iter"
      << std::setw(14) << "LOSS"
      << "PREC\n";
  for (const ExperimentResult& r : results) {
    if (r.records.empty()) continue;
    const IterationRecord& last = r.records.back();
    for (const auto& [name, loss] : last.loss) {
      out << std::setw(22) << r.dataset_name << std::setw(8) << r.samples << std::setw(5)
          << r.features << std::setw(4) << r.classes << std::setw(12) << name << std::setw(6)
          << last.iteration << std::setw(14) << format_sig6(loss)
          << format_sig6(last.prec.at(name)) << '\n';
    }
  }
}

}  // namespace qglr
