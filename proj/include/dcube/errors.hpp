#pragma once

#include <stdexcept>
#include <string>

namespace dcube {

/// Broad classes of failure; the CLI maps them to exit codes 2 and 3.
enum class ErrorCategory { Input, Numeric };

enum class ErrorKind {
  // input
  ParseError,
  NonNumericCell,
  DuplicateLabel,
  DimensionMismatch,
  ColumnMismatch,
  RowMismatch,
  BlockSizeMismatch,
  EmptyGroup,
  NegativeEntry,
  NonFiniteEntry,
  InvalidWeights,
  InvalidConfig,
  EmptyScores,
  TooFewTables,
  // numeric
  ZeroVarianceColumn,
  ZeroVarianceTable,
  NullEigenvalue,
  MixedSignEigenvector,
};

const char* to_string(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace dcube
