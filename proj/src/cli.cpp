#include "qglr/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <string>
#include <vector>

#include "qglr/errors.hpp"
#include "qglr/experiment.hpp"

namespace qglr {

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Train multinomial logistic regression with SFH-Newton, NAG and Adagrad "
               "(plain and quadratic-gradient) and write per-iteration LOSS/PREC CSV files.",
               "qglr_bench"};

  std::vector<std::string> datasets;
  std::size_t iterations = 30;
  std::string suite_name = "all";
  double epsilon = kDefaultEpsilon;
  double base_lr = kDefaultBaseLr;
  std::string out_dir = ".";
  std::optional<std::size_t> features;
  std::string dump_dir;

  app.add_option("--dataset", datasets, "LIBSVM dataset file (repeatable)")->required();
  app.add_option("--iterations", iterations, "Full-batch iterations per optimizer")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--suite", suite_name, "Optimizer suite: adagrad, nag or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"adagrad", "nag", "all"}));
  app.add_option("--epsilon", epsilon, "Preconditioner / Adagrad epsilon")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--base-lr", base_lr, "Learning rate of the plain NAG and Adagrad baselines")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory for CSV files")->capture_default_str();
  app.add_option("--features", features, "LIBSVM feature count hint");
  app.add_option("--dump-weights", dump_dir,
                 "Directory receiving <dataset>_<optimizer>.weights files");

  if (argc <= 1) {
    err << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    const Suite suite = parse_suite(suite_name);
    std::filesystem::create_directories(out_dir);
    if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);

    std::vector<ExperimentResult> results;
    for (const std::string& path : datasets) {
      ExperimentSpec spec;
      spec.dataset_path = path;
      spec.iterations = iterations;
      spec.suite = suite;
      spec.epsilon = epsilon;
      spec.base_lr = base_lr;
      spec.out_dir = out_dir;
      spec.feature_count_hint = features;

      ExperimentResult result = run_experiment(spec);
      for (const auto& file : emit_all_csv(result, suite, out_dir)) {
        out << "wrote " << file.string() << '\n';
      }
      if (!dump_dir.empty()) {
        for (const auto& [name, w] : result.final_weights) {
          dump_weights(w, std::filesystem::path(dump_dir) /
                              (result.dataset_name + "_" + name + ".weights"));
        }
      }
      results.push_back(std::move(result));
    }
    print_summary(out, results);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qglr
