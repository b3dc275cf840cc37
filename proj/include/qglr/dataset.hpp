#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qglr/matrix.hpp"

namespace qglr {

/// A LIBSVM file as read: original labels and densified, unscaled features.
struct RawDataset {
  std::vector<double> labels;
  DenseMatrix features;  // n × d; absent sparse entries are exactly 0

  std::size_t sample_count() const noexcept { return labels.size(); }
  std::size_t feature_count() const noexcept { return features.cols(); }
};

/// Per-feature (min, max) taken from a training split.
struct FeatureBounds {
  double min = 0.0;
  double max = 0.0;
};
using NormBounds = std::vector<FeatureBounds>;

/// Ascending original label values; position k is class index k.
struct LabelMap {
  std::vector<double> classes;

  std::size_t class_count() const noexcept { return classes.size(); }
  /// Throws RangeError when `original` was not seen at construction.
  std::size_t index_of(double original) const;
};

/// Training-ready data: bias column first, features in [0, 1], labels 0..c-1.
struct Dataset {
  DenseMatrix x;  // n × (1 + d)
  std::vector<std::size_t> labels;
  std::size_t classes = 0;
  NormBounds bounds;
  LabelMap label_map;

  std::size_t sample_count() const noexcept { return x.rows(); }
  std::size_t feature_count() const noexcept { return x.cols() == 0 ? 0 : x.cols() - 1; }
};

/// n × c indicator matrix: row i has a single 1 at column labels[i].
struct OneHotLabels {
  DenseMatrix y;
};

/// Reads `<label> <idx>:<val> ...` records with 1-based, strictly increasing
/// indices. Blank lines and lines starting with '#' are skipped; CRLF is
/// accepted. The feature count is max(hint, largest index seen).
/// Throws ParseError (with the 1-based line number) on malformed input.
RawDataset parse_libsvm(std::istream& in, std::optional<std::size_t> feature_count_hint = {});
RawDataset parse_libsvm(const std::string& text,
                        std::optional<std::size_t> feature_count_hint = {});

/// Writes `raw` in LIBSVM format, omitting zero entries and printing values
/// with enough digits to round-trip exactly.
std::string emit_libsvm(const RawDataset& raw);

/// Maps sorted distinct labels to 0..c-1. Throws DegenerateProblemError on
/// fewer than two distinct labels.
std::pair<LabelMap, std::vector<std::size_t>> remap_labels(const RawDataset& raw);

/// Min-max scales each feature into [0, 1] and prepends a column of ones.
///
/// Without `bounds`, the bounds are taken from `raw` itself (training
/// split); constant features map to 0. With `bounds` (held-out data), they
/// are applied as given and results are clamped to [0, 1]. Labels are
/// remapped with `labels` when supplied, otherwise by remap_labels(raw).
Dataset normalize_and_bias(const RawDataset& raw, const std::optional<NormBounds>& bounds = {},
                           const std::optional<LabelMap>& labels = {});

/// Throws RangeError when a label is >= c.
OneHotLabels one_hot(const std::vector<std::size_t>& labels, std::size_t classes);

/// parse_libsvm + normalize_and_bias for a file on disk. Errors carry the path.
Dataset load_dataset(const std::filesystem::path& path,
                     std::optional<std::size_t> feature_count_hint = {});
RawDataset load_raw_dataset(const std::filesystem::path& path,
                            std::optional<std::size_t> feature_count_hint = {});

}  // namespace qglr
