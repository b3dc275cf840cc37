#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qglr {

/// Operand shapes are incompatible for the requested operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A LIBSVM record could not be read. `line()` is 1-based; `source` names
/// the file when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string detail, const std::string& source = {})
      : std::runtime_error((source.empty() ? "" : source + ": ") + "line " +
                           std::to_string(line) + ": " + detail),
        line_(line),
        detail_(std::move(detail)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// A class label or index fell outside its admissible range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A scalar configuration value violates its contract (e.g. epsilon <= 0).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input was rejected because the problem it describes is degenerate
/// (single class, empty dataset).
class DegenerateProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition on a matrix argument (e.g. symmetry) does not hold.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qglr
