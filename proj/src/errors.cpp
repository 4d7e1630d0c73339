#include "dcube/errors.hpp"

namespace dcube {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ColumnMismatch: return "ColumnMismatch";
    case ErrorKind::RowMismatch: return "RowMismatch";
    case ErrorKind::BlockSizeMismatch: return "BlockSizeMismatch";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::EmptyScores: return "EmptyScores";
    case ErrorKind::TooFewTables: return "TooFewTables";
    case ErrorKind::ZeroVarianceColumn: return "ZeroVarianceColumn";
    case ErrorKind::ZeroVarianceTable: return "ZeroVarianceTable";
    case ErrorKind::NullEigenvalue: return "NullEigenvalue";
    case ErrorKind::MixedSignEigenvector: return "MixedSignEigenvector";
  }
  return "Error";
}

ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVarianceColumn:
    case ErrorKind::ZeroVarianceTable:
    case ErrorKind::NullEigenvalue:
    case ErrorKind::MixedSignEigenvector:
      return ErrorCategory::Numeric;
    default:
      return ErrorCategory::Input;
  }
}

}  // namespace dcube
