#include "qglr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qglr/errors.hpp"

namespace qglr {
namespace {

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f'; }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double parse_real(std::string_view token, std::size_t line_no, const char* what) {
  // from_chars rejects a leading '+', which some LIBSVM writers emit.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, std::string("non-numeric ") + what + " '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, std::string("non-finite ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

struct SparseRow {
  double label;
  std::vector<std::pair<std::size_t, double>> entries;  // 1-based index
};

}  // namespace

std::size_t LabelMap::index_of(double original) const {
  const auto it = std::lower_bound(classes.begin(), classes.end(), original);
  if (it == classes.end() || *it != original) {
    throw RangeError("label " + std::to_string(original) + " is not a known class");
  }
  return static_cast<std::size_t>(it - classes.begin());
}

RawDataset parse_libsvm(std::istream& in, std::optional<std::size_t> feature_count_hint) {
  std::vector<SparseRow> rows;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    SparseRow row{parse_real(tokens.front(), line_no, "label"), {}};
    std::size_t prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size()) {
        throw ParseError(line_no, "expected <index>:<value>, got '" + std::string(tok) + "'");
      }
      std::size_t index = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + colon, index);
      if (ec != std::errc{} || ptr != tok.data() + colon) {
        throw ParseError(line_no, "bad feature index '" + std::string(tok.substr(0, colon)) + "'");
      }
      if (index == 0) throw ParseError(line_no, "feature index 0 (indices are 1-based)");
      if (index <= prev) {
        throw ParseError(line_no, "feature index " + std::to_string(index) +
                                      " not strictly increasing after " + std::to_string(prev));
      }
      prev = index;
      row.entries.emplace_back(index, parse_real(tok.substr(colon + 1), line_no, "value"));
    }
    max_index = std::max(max_index, prev);
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw std::runtime_error("I/O error while reading LIBSVM input");

  const std::size_t d = std::max(feature_count_hint.value_or(0), max_index);
  RawDataset raw;
  raw.labels.reserve(rows.size());
  raw.features = DenseMatrix(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    raw.labels.push_back(rows[i].label);
    for (const auto& [index, value] : rows[i].entries) raw.features(i, index - 1) = value;
  }
  return raw;
}

RawDataset parse_libsvm(const std::string& text, std::optional<std::size_t> feature_count_hint) {
  std::istringstream in(text);
  return parse_libsvm(in, feature_count_hint);
}

std::string emit_libsvm(const RawDataset& raw) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < raw.sample_count(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", raw.labels[i]);
    out += buf;
    for (std::size_t j = 0; j < raw.feature_count(); ++j) {
      const double v = raw.features(i, j);
      if (v == 0.0) continue;
      std::snprintf(buf, sizeof buf, " %zu:%.17g", j + 1, v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::pair<LabelMap, std::vector<std::size_t>> remap_labels(const RawDataset& raw) {
  LabelMap map{raw.labels};
  std::sort(map.classes.begin(), map.classes.end());
  map.classes.erase(std::unique(map.classes.begin(), map.classes.end()), map.classes.end());
  if (map.classes.size() < 2) {
    throw DegenerateProblemError("need at least 2 distinct labels, found " +
                                 std::to_string(map.classes.size()));
  }
  std::vector<std::size_t> labels;
  labels.reserve(raw.labels.size());
  for (double l : raw.labels) labels.push_back(map.index_of(l));
  return {std::move(map), std::move(labels)};
}

Dataset normalize_and_bias(const RawDataset& raw, const std::optional<NormBounds>& bounds,
                           const std::optional<LabelMap>& labels) {
  const std::size_t n = raw.sample_count();
  const std::size_t d = raw.feature_count();

  Dataset ds;
  if (bounds) {
    if (bounds->size() != d) {
      throw ShapeError("normalize_and_bias: " + std::to_string(bounds->size()) +
                       " bounds for " + std::to_string(d) + " features");
    }
    ds.bounds = *bounds;
  } else {
    ds.bounds.assign(d, FeatureBounds{});
    for (std::size_t j = 0; j < d && n > 0; ++j) {
      FeatureBounds b{raw.features(0, j), raw.features(0, j)};
      for (std::size_t i = 1; i < n; ++i) {
        b.min = std::min(b.min, raw.features(i, j));
        b.max = std::max(b.max, raw.features(i, j));
      }
      ds.bounds[j] = b;
    }
  }

  ds.x = DenseMatrix(n, d + 1);
  for (std::size_t i = 0; i < n; ++i) {
    ds.x(i, 0) = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const FeatureBounds& b = ds.bounds[j];
      const double range = b.max - b.min;
      double v = range > 0.0 ? (raw.features(i, j) - b.min) / range : 0.0;
      ds.x(i, j + 1) = std::clamp(v, 0.0, 1.0);
    }
  }

  if (labels) {
    ds.label_map = *labels;
    ds.labels.reserve(n);
    for (double l : raw.labels) ds.labels.push_back(ds.label_map.index_of(l));
  } else {
    auto [map, idx] = remap_labels(raw);
    ds.label_map = std::move(map);
    ds.labels = std::move(idx);
  }
  ds.classes = ds.label_map.class_count();
  return ds;
}

OneHotLabels one_hot(const std::vector<std::size_t>& labels, std::size_t classes) {
  OneHotLabels out{DenseMatrix(labels.size(), classes)};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= classes) {
      throw RangeError("one_hot: label " + std::to_string(labels[i]) + " at row " +
                       std::to_string(i) + " is not below class count " + std::to_string(classes));
    }
    out.y(i, labels[i]) = 1.0;
  }
  return out;
}

RawDataset load_raw_dataset(const std::filesystem::path& path,
                            std::optional<std::size_t> feature_count_hint) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open dataset file");
  try {
    return parse_libsvm(in, feature_count_hint);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

Dataset load_dataset(const std::filesystem::path& path,
                     std::optional<std::size_t> feature_count_hint) {
  const RawDataset raw = load_raw_dataset(path, feature_count_hint);
  if (raw.sample_count() == 0) {
    throw DegenerateProblemError(path.string() + ": dataset has no records");
  }
  try {
    return normalize_and_bias(raw);
  } catch (const DegenerateProblemError& e) {
    throw DegenerateProblemError(path.string() + ": " + e.what());
  }
}

}  // namespace qglr
