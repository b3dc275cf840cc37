#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qglr/dataset.hpp"
#include "qglr/optimizers.hpp"

namespace qglr {

/// Which optimizers an experiment trains.
///   Adagrad: SFHNewton, Adagrad, AdagradQG
///   Nag:     SFHNewton, NAG, NAGQG
///   All:     all five
enum class Suite { Adagrad, Nag, All };

std::string_view to_string(Suite suite);
/// "adagrad", "nag" or "all"; throws ParameterError otherwise.
Suite parse_suite(std::string_view name);

std::vector<OptimizerKind> optimizers_in(Suite suite);

enum class Metric { Loss, Prec };
std::string_view to_string(Metric metric);

struct ExperimentSpec {
  std::filesystem::path dataset_path;
  std::size_t iterations = 30;
  Suite suite = Suite::All;
  double epsilon = kDefaultEpsilon;
  double base_lr = kDefaultBaseLr;
  std::filesystem::path out_dir = ".";
  std::optional<std::size_t> feature_count_hint;
};

/// One iteration's metrics for every optimizer in the experiment, keyed by
/// the optimizer's to_string name.
struct IterationRecord {
  std::size_t iteration = 0;
  std::map<std::string, double> loss;
  std::map<std::string, double> prec;
};

struct ExperimentResult {
  std::string dataset_name;  // file name of the dataset path
  std::size_t samples = 0;
  std::size_t features = 0;
  std::size_t classes = 0;
  std::vector<IterationRecord> records;              // iterations 0..κ
  std::map<std::string, DenseMatrix> final_weights;  // by optimizer name
};

/// Loads and prepares the dataset once, then trains every optimizer of the
/// suite from W = 0. Load failures are rethrown with the dataset path.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Same, on already-prepared data.
ExperimentResult run_experiment(const Dataset& data, const ExperimentSpec& spec,
                                std::string dataset_name);

/// Column header used for `kind` in `suite`'s CSV files (the NAG suite names
/// SFH-Newton "SFHN").
std::string csv_column_name(OptimizerKind kind, Suite suite);

/// `Iterations,<col>,<col>,<col>` header and one row per record, values with
/// 6 significant digits, LF line endings. `suite` must be Adagrad or Nag.
std::string format_csv(const std::vector<IterationRecord>& records, Metric metric, Suite suite);

/// Writes `<dataset>_<metric>_<suite>.csv` into out_dir and returns its path.
/// Throws std::runtime_error when the file cannot be written.
std::filesystem::path emit_csv(const std::vector<IterationRecord>& records, Metric metric,
                               Suite suite, const std::filesystem::path& out_dir,
                               const std::string& dataset_name);

/// Emits LOSS and PREC files for every suite the experiment covers
/// (two files for Adagrad/Nag, four for All).
std::vector<std::filesystem::path> emit_all_csv(const ExperimentResult& result, Suite suite,
                                                const std::filesystem::path& out_dir);

/// Writes W with one class per line, space-separated, 17 significant digits.
void dump_weights(const DenseMatrix& w, const std::filesystem::path& path);

/// Final-iteration LOSS/PREC per optimizer, one row per (dataset, optimizer).
void print_summary(std::ostream& out, const std::vector<ExperimentResult>& results);

/// printf("%.6g") of `value`.
std::string format_sig6(double value);

}  // namespace qglr
