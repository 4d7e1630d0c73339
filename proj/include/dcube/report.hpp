#pragma once

// Analysis reports: an ordered list of named text, scalar, vector and matrix
// entries serialized as a tab-separated text document with every number at
// 12 significant digits, plus one CSV sidecar per matrix.

#include "dcube/tabular.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dcube {

/// Fixed 12-significant-digit scientific form; -0 prints as 0.
std::string format_number(double v);

struct TextEntry {
  std::string name;
  std::string value;
};
struct ScalarEntry {
  std::string name;
  double value = 0.0;
};
struct VectorEntry {
  std::string name;
  Labels labels;
  Vector values;
};
struct MatrixEntry {
  std::string name;
  Labels row_labels;
  Labels col_labels;
  Matrix values;
};
using ReportEntry = std::variant<TextEntry, ScalarEntry, VectorEntry, MatrixEntry>;

class Report {
 public:
  void add_text(std::string name, std::string value);
  void add_scalar(std::string name, double value);
  void add_vector(std::string name, Labels labels, Vector values);
  void add_matrix(std::string name, Labels row_labels, Labels col_labels, Matrix values);

  const std::vector<ReportEntry>& entries() const noexcept { return entries_; }

  const TextEntry* text(std::string_view name) const;
  const ScalarEntry* scalar(std::string_view name) const;
  const VectorEntry* vector(std::string_view name) const;
  const MatrixEntry* matrix(std::string_view name) const;

  std::string serialize() const;
  static Report parse(std::string_view document);

 private:
  void check_new(const std::string& name) const;
  std::vector<ReportEntry> entries_;
};

/// Hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

/// Writes report.txt and <matrix name>.csv for each matrix entry.
void write_report(const Report& report, const std::filesystem::path& dir);

}  // namespace dcube
