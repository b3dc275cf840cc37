// Acceptance checks, one PASS/FAIL/SKIP line per criterion.
//
//   qglr_acceptance [--group math|data|all] [--data-dir DIR]
//
// Exit status: 0 all passed, 1 any failure, 77 nothing failed but at least
// one criterion was skipped (dataset files absent).

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qglr/cli.hpp"
#include "qglr/experiment.hpp"
#include "qglr/oracle.hpp"
#include "qglr/preconditioner.hpp"
#include "qglr/softmax_model.hpp"
#include "test_support.hpp"

#ifndef QGLR_DEFAULT_DATA_DIR
#define QGLR_DEFAULT_DATA_DIR "data"
#endif

using namespace qglr;
namespace fs = std::filesystem;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Tally {
  int pass = 0, fail = 0, skip = 0;

  void report(const char* id, const char* title, Verdict v, const std::string& detail) {
    const char* tag = v == Verdict::Pass ? "PASS" : v == Verdict::Fail ? "FAIL" : "SKIP";
    (v == Verdict::Pass ? pass : v == Verdict::Fail ? fail : skip) += 1;
    std::cout << tag << "  " << id << "  " << title << ": " << detail << std::endl;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DenseMatrix symmetrize(const DenseMatrix& m) { return 0.5 * (m + transpose(m)); }

struct Instance {
  DenseMatrix x;
  OneHotLabels y;
  DenseMatrix w;
};

// X has a bias column and features in [0, 1].
Instance random_instance(std::mt19937_64& rng, std::size_t max_n, std::size_t max_d,
                         std::size_t max_c) {
  const std::size_t c = 2 + rng() % (max_c - 1);
  const std::size_t n = std::max<std::size_t>(c, 2 + rng() % (max_n - 1));
  const std::size_t d = 1 + rng() % max_d;
  const Dataset ds = qglr::testing::random_dataset(rng, n, d, c);
  return {ds.x, one_hot(ds.labels, c), qglr::testing::random_matrix(rng, c, d + 1, -2.0, 2.0)};
}

// ---------------------------------------------------------------- math group

void criterion_gradient(Tally& t) {
  std::mt19937_64 rng(2);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  constexpr int kInstances = 25;
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = random_instance(rng, 10, 4, 5);
    const DenseMatrix analytic = gradient(inst.x, inst.y, softmax_rows(logits(inst.x, inst.w)));
    const DenseMatrix numeric = oracle::finite_diff_gradient(
        [&](const DenseMatrix& m) { return log_likelihood(inst.x, inst.y, m); }, inst.w, 1e-5);
    worst = std::max(worst, qglr::testing::max_rel_error(analytic, numeric));
  }
  const double secs = seconds_since(t0);
  t.report("C2", "gradient vs central differences",
           worst <= 1e-5 && secs < 1.0 ? Verdict::Pass : Verdict::Fail,
           "max rel err " + sci(worst) + " (limit 1e-5) over " + std::to_string(kInstances) +
               " instances in " + sci(secs) + " s (limit 1 s)");
}

void criterion_hessian(Tally& t) {
  std::mt19937_64 rng(3);
  double worst_abs = 0.0, worst_eig = -1e300;
  bool symmetric = true;
  constexpr int kInstances = 20;
  constexpr double h = oracle::kSecondOrderStep;
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = random_instance(rng, 8, 3, 3);
    const DenseMatrix hess =
        oracle::assemble_hessian(inst.x, softmax_rows(logits(inst.x, inst.w)));
    symmetric = symmetric && hess == transpose(hess);
    worst_eig = std::max(worst_eig, oracle::max_eigenvalue_symmetric(hess));
    const auto f = [&](const DenseMatrix& m) { return log_likelihood(inst.x, inst.y, m); };
    for (std::size_t a = 0; a < hess.rows(); ++a) {
      for (std::size_t b = 0; b < hess.cols(); ++b) {
        auto at = [&](double da, double db) {
          DenseMatrix m = inst.w;
          m.values()[a] += da;
          m.values()[b] += db;
          return f(m);
        };
        const double fd = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
        worst_abs = std::max(worst_abs, std::abs(fd - hess(a, b)));
      }
    }
  }
  const bool ok = worst_abs <= 1e-4 && symmetric && worst_eig <= 1e-8;
  t.report("C3", "Hessian vs second differences", ok ? Verdict::Pass : Verdict::Fail,
           "max abs err " + sci(worst_abs) + " (limit 1e-4), symmetry " +
               (symmetric ? "exact" : "BROKEN") + ", max eigenvalue " + sci(worst_eig) +
               " (limit 1e-8)");
}

void criterion_loewner(Tally& t) {
  std::mt19937_64 rng(4);
  double worst = 1e300;
  constexpr int kInstances = 40;
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = random_instance(rng, 6, 2, 3);
    const std::size_t c = inst.y.y.cols();
    const DenseMatrix hess =
        oracle::assemble_hessian(inst.x, softmax_rows(logits(inst.x, inst.w)));
    const DenseMatrix m = 0.5 * kronecker(DenseMatrix::identity(c), matmul_tn(inst.x, inst.x)) + hess;
    worst = std::min(worst, oracle::min_eigenvalue_symmetric(symmetrize(m)));
  }
  t.report("C4", "Loewner bound 1/2 I(x)XtX + H >= 0", worst >= -1e-8 ? Verdict::Pass : Verdict::Fail,
           "min eigenvalue " + sci(worst) + " (limit -1e-8) over " + std::to_string(kInstances) +
               " instances");
}

void criterion_preconditioner(Tally& t) {
  std::mt19937_64 rng(5);
  int mismatches = 0;
  bool rows_equal = true, positive = true;
  constexpr int kInstances = 50;
  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = 1 + rng() % 80, d = rng() % 20, c = 2 + rng() % 6;
    const DenseMatrix x = qglr::testing::random_design(rng, n, d);
    const DenseMatrix b = build_preconditioner(x, c, 1e-8).matrix();
    for (std::size_t j = 0; j <= d; ++j) {
      double denom = 1e-8;
      for (std::size_t k = 0; k <= d; ++k) {
        double gram = 0.0;
        for (std::size_t p = 0; p < n; ++p) gram += x(p, k) * x(p, j);
        denom += std::abs(-0.5 * gram);
      }
      const double expected = 1.0 / denom;
      for (std::size_t r = 0; r < c; ++r) {
        if (b(r, j) != expected) ++mismatches;
        if (b(r, j) != b(0, j)) rows_equal = false;
        if (!(b(r, j) > 0.0)) positive = false;
      }
    }
  }
  const bool ok = mismatches == 0 && rows_equal && positive;
  t.report("C5", "preconditioner vs brute force", ok ? Verdict::Pass : Verdict::Fail,
           std::to_string(mismatches) + " non-identical entries over " +
               std::to_string(kInstances) + " instances, rows " +
               (rows_equal ? "identical" : "DIFFER") + ", entries " +
               (positive ? "positive" : "NOT POSITIVE"));
}

void criterion_kronecker(Tally& t) {
  std::mt19937_64 rng(6);
  auto invertible = [&] {
    for (;;) {
      DenseMatrix m = qglr::testing::random_matrix(rng, 2, 2, -2.0, 2.0);
      if (std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) >= 0.1) return m;
    }
  };
  double worst_inv = 0.0, worst_psd = 1e300;
  constexpr int kTrials = 100;
  for (int i = 0; i < kTrials; ++i) {
    const DenseMatrix a = invertible(), b = invertible();
    worst_inv = std::max(worst_inv, max_abs_diff(oracle::invert_small(kronecker(a, b)),
                                                 kronecker(oracle::invert_small(a),
                                                           oracle::invert_small(b))));
    const DenseMatrix s = qglr::testing::random_symmetric(rng, 2);
    const DenseMatrix m = qglr::testing::random_matrix(rng, 2, 2);
    const DenseMatrix upper = s + matmul_tn(m, m);
    const DenseMatrix n = qglr::testing::random_matrix(rng, 2, 2);
    const DenseMatrix psd = matmul_tn(n, n);
    worst_psd = std::min(worst_psd,
                         oracle::min_eigenvalue_symmetric(symmetrize(kronecker(upper - s, psd))));
  }
  const bool ok = worst_inv <= 1e-8 && worst_psd >= -1e-10;
  t.report("C6", "Kronecker inverse and PSD identities", ok ? Verdict::Pass : Verdict::Fail,
           "inverse max err " + sci(worst_inv) + " (limit 1e-8), PSD min eigenvalue " +
               sci(worst_psd) + " (limit -1e-10), " + std::to_string(kTrials) + " trials each");
}

// ---------------------------------------------------------------- data group

struct Expected {
  const char* file;
  std::size_t n, d, c;
};

constexpr Expected kTable[] = {
    {"segment.scale", 2310, 19, 7}, {"shuttle.scale", 43500, 9, 7},
    {"shuttle.scale.t", 14500, 9, 7}, {"vehicle.scale", 846, 18, 4}, {"iris.scale", 150, 4, 3},
};
// Training files used for the optimizer criteria.
const std::vector<std::string> kTrainingSets = {"segment.scale", "shuttle.scale",
                                                "vehicle.scale", "iris.scale"};

class DataGroup {
 public:
  explicit DataGroup(fs::path dir) : dir_(std::move(dir)) {
    for (const auto& e : kTable) {
      if (!fs::exists(dir_ / e.file)) missing_.push_back(e.file);
    }
  }

  void run(Tally& t) {
    criterion_table(t);
    criterion_monotone(t);
    criterion_dominance(t);
    criterion_anchors(t);
    criterion_determinism(t);
  }

 private:
  bool skip_if_missing(Tally& t, const char* id, const char* title,
                       const std::vector<std::string>& needed) {
    std::string absent;
    for (const auto& f : needed) {
      if (std::find(missing_.begin(), missing_.end(), f) != missing_.end()) {
        absent += (absent.empty() ? "" : ", ") + f;
      }
    }
    if (absent.empty()) return false;
    t.report(id, title, Verdict::Skip,
             "missing " + absent + " in " + dir_.string() +
                 " (run tools/fetch_datasets.sh or set QGLR_DATA_DIR)");
    return true;
  }

  const ExperimentResult& experiment(const std::string& file) {
    auto it = results_.find(file);
    if (it == results_.end()) {
      ExperimentSpec spec;
      spec.dataset_path = dir_ / file;
      spec.suite = Suite::All;
      it = results_.emplace(file, run_experiment(spec)).first;
    }
    return it->second;
  }

  void criterion_table(Tally& t) {
    std::vector<std::string> all;
    for (const auto& e : kTable) all.emplace_back(e.file);
    if (skip_if_missing(t, "C1", "dataset fidelity", all)) return;
    std::string detail;
    bool ok = true;
    for (const auto& e : kTable) {
      const RawDataset raw = load_raw_dataset(dir_ / e.file);
      const std::set<double> classes(raw.labels.begin(), raw.labels.end());
      const bool match =
          raw.sample_count() == e.n && raw.feature_count() == e.d && classes.size() == e.c;
      ok = ok && match;
      detail += std::string(detail.empty() ? "" : ", ") + e.file + "=(" +
                std::to_string(raw.sample_count()) + "," + std::to_string(raw.feature_count()) +
                "," + std::to_string(classes.size()) + ")" + (match ? "" : "!");
    }
    t.report("C1", "dataset fidelity", ok ? Verdict::Pass : Verdict::Fail, detail);
  }

  void criterion_monotone(Tally& t) {
    if (skip_if_missing(t, "C7", "SFH-Newton monotone ascent", kTrainingSets)) return;
    std::string detail;
    bool ok = true;
    for (const auto& file : kTrainingSets) {
      const auto& r = experiment(file);
      std::size_t drops = 0;
      for (std::size_t i = 1; i < r.records.size(); ++i) {
        if (r.records[i].loss.at("SFHNewton") < r.records[i - 1].loss.at("SFHNewton")) ++drops;
      }
      ok = ok && drops == 0 && r.records.size() == 31;
      detail += std::string(detail.empty() ? "" : ", ") + file + " " + std::to_string(drops) +
                " decreases";
    }
    t.report("C7", "SFH-Newton monotone ascent", ok ? Verdict::Pass : Verdict::Fail, detail);
  }

  void criterion_dominance(Tally& t) {
    const std::vector<std::string> files = {"segment.scale", "vehicle.scale"};
    if (skip_if_missing(t, "C8", "enhanced methods dominate at iteration 30", files)) return;
    std::string detail;
    bool ok = true;
    for (const auto& file : files) {
      const IterationRecord& last = experiment(file).records.back();
      for (auto [plain, enhanced] : {std::pair{"Adagrad", "AdagradQG"}, std::pair{"NAG", "NAGQG"}}) {
        const bool loss_ok = last.loss.at(enhanced) >= last.loss.at(plain);
        const bool prec_ok = last.prec.at(enhanced) >= last.prec.at(plain) - 0.01;
        ok = ok && loss_ok && prec_ok;
        detail += std::string(detail.empty() ? "" : "; ") + file + " " + enhanced + " lnL " +
                  format_sig6(last.loss.at(enhanced)) + (loss_ok ? " >= " : " < ") + plain + " " +
                  format_sig6(last.loss.at(plain)) + ", PREC " +
                  format_sig6(last.prec.at(enhanced)) + (prec_ok ? " ok vs " : " low vs ") +
                  format_sig6(last.prec.at(plain));
      }
    }
    t.report("C8", "enhanced methods dominate at iteration 30", ok ? Verdict::Pass : Verdict::Fail,
             detail);
  }

  void criterion_anchors(Tally& t) {
    if (skip_if_missing(t, "C9", "W = 0 anchors", kTrainingSets)) return;
    std::string detail;
    bool ok = true;
    for (const auto& file : kTrainingSets) {
      // Reference values straight from the raw labels.
      const RawDataset raw = load_raw_dataset(dir_ / file);
      const std::set<double> classes(raw.labels.begin(), raw.labels.end());
      const double n = static_cast<double>(raw.sample_count());
      const double expected_loss = n * std::log(1.0 / static_cast<double>(classes.size()));
      const double expected_prec =
          static_cast<double>(std::count(raw.labels.begin(), raw.labels.end(), *classes.begin())) / n;
      const IterationRecord& first = experiment(file).records.front();
      bool this_ok = true;
      for (const auto& [name, loss] : first.loss) {
        this_ok = this_ok && format_sig6(loss) == format_sig6(expected_loss) &&
                  first.prec.at(name) == expected_prec;
      }
      ok = ok && this_ok;
      detail += std::string(detail.empty() ? "" : ", ") + file + " " +
                format_sig6(first.loss.at("SFHNewton")) + "/" +
                format_sig6(first.prec.at("SFHNewton")) + (this_ok ? "" : "!");
    }
    t.report("C9", "W = 0 anchors", ok ? Verdict::Pass : Verdict::Fail, detail);
  }

  void criterion_determinism(Tally& t) {
    if (skip_if_missing(t, "C10", "determinism and shuttle runtime", kTrainingSets)) return;
    const fs::path scratch = qglr::testing::make_temp_dir("acceptance");
    auto run_all = [&](const fs::path& out) {
      std::vector<std::string> args = {"qglr_bench", "--suite", "all", "--out", out.string()};
      for (const auto& f : kTrainingSets) {
        args.push_back("--dataset");
        args.push_back((dir_ / f).string());
      }
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream sink, err;
      return cli_main(static_cast<int>(argv.size()), argv.data(), sink, err);
    };
    const int rc_a = run_all(scratch / "a");
    const int rc_b = run_all(scratch / "b");
    std::size_t files = 0, differing = 0;
    if (fs::exists(scratch / "a")) {
      for (const auto& entry : fs::directory_iterator(scratch / "a")) {
        ++files;
        std::ifstream fa(entry.path(), std::ios::binary), fb(scratch / "b" / entry.path().filename(),
                                                             std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        if (sa.str() != sb.str()) ++differing;
      }
    }

    ExperimentSpec spec;
    spec.dataset_path = dir_ / "shuttle.scale";
    spec.suite = Suite::All;
    const auto t0 = std::chrono::steady_clock::now();
    (void)run_experiment(spec);
    const double secs = seconds_since(t0);
    fs::remove_all(scratch);

    const bool ok = rc_a == 0 && rc_b == 0 && files == 4 * kTrainingSets.size() && differing == 0 &&
                    secs < 60.0;
    t.report("C10", "determinism and shuttle runtime", ok ? Verdict::Pass : Verdict::Fail,
             std::to_string(files) + " CSVs, " + std::to_string(differing) +
                 " differ between runs; shuttle all-suite 30 iterations " + sci(secs) +
                 " s (limit 60 s)");
  }

  fs::path dir_;
  std::vector<std::string> missing_;
  std::map<std::string, ExperimentResult> results_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks", "qglr_acceptance"};
  std::string group = "all";
  std::string data_dir;
  app.add_option("--group", group, "math, data or all")
      ->check(CLI::IsMember({"math", "data", "all"}));
  app.add_option("--data-dir", data_dir, "Directory holding the LIBSVM files");
  CLI11_PARSE(app, argc, argv);

  if (data_dir.empty()) {
    const char* env = std::getenv("QGLR_DATA_DIR");
    data_dir = env && *env ? env : QGLR_DEFAULT_DATA_DIR;
  }

  Tally tally;
  try {
    if (group != "data") {
      criterion_gradient(tally);
      criterion_hessian(tally);
      criterion_loewner(tally);
      criterion_preconditioner(tally);
      criterion_kronecker(tally);
    }
    if (group != "math") DataGroup(data_dir).run(tally);
  } catch (const std::exception& e) {
    std::cout << "FAIL  --  unexpected error: " << e.what() << std::endl;
    ++tally.fail;
  }

  std::cout << tally.pass << " passed, " << tally.fail << " failed, " << tally.skip << " skipped"
            << std::endl;
  if (tally.fail > 0) return 1;
  return tally.skip > 0 ? 77 : 0;
}
