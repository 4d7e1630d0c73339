#pragma once

// CSV ingestion. Tables: comma separated, '.' decimal point, first row holds
// column labels and first column row labels. Group files hold
// `row_label,group_label` lines; block files `block_label,row_count` lines in
// stacked order. Either may start with a header line.

#include "dcube/tabular.hpp"

#include <filesystem>
#include <istream>
#include <string>

namespace dcube::io {

DataTable read_table(std::istream& in, const std::string& source = "<stream>");
DataTable load_table(const std::filesystem::path& path);

/// Grouping aligned to `row_labels`; every row must be listed exactly once.
GroupAssignment read_groups(std::istream& in, const Labels& row_labels, const std::string& source = "<stream>");
GroupAssignment load_groups(const std::filesystem::path& path, const Labels& row_labels);

BlockDescriptor read_blocks(std::istream& in, const std::string& source = "<stream>");
BlockDescriptor load_blocks(const std::filesystem::path& path);

void write_table_csv(std::ostream& out, const Matrix& values, const Labels& row_labels, const Labels& col_labels);

}  // namespace dcube::io
