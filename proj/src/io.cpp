#include "dcube/io.hpp"

#include "dcube/errors.hpp"
#include "dcube/report.hpp"

#include <boost/tokenizer.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <unordered_map>

namespace dcube::io {

namespace {

using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string where(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line); }

/// Splits every nonblank line into trimmed cells; records 1-based line numbers.
struct CsvLine {
  std::size_t number;
  std::vector<std::string> cells;
};

std::vector<CsvLine> read_lines(std::istream& in, const std::string& source) {
  std::vector<CsvLine> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    CsvLine row{number, {}};
    try {
      Tokenizer tok(line);
      for (const auto& cell : tok) row.cells.push_back(trim(cell));
    } catch (const boost::escaped_list_error& e) {
      throw Error(ErrorKind::ParseError, where(source, number) + ": " + e.what());
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<double> parse_number(const std::string& cell) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

DataTable read_table(std::istream& in, const std::string& source) {
  const auto lines = read_lines(in, source);
  if (lines.empty()) throw Error(ErrorKind::ParseError, where(source, 1) + ": empty file");
  const auto& header = lines.front();
  if (header.cells.size() < 2) {
    throw Error(ErrorKind::ParseError, where(source, header.number) + ": header needs at least one column label");
  }
  Labels cols(header.cells.begin() + 1, header.cells.end());
  const auto p = static_cast<Index>(cols.size());
  if (lines.size() < 2) throw Error(ErrorKind::ParseError, where(source, header.number) + ": no data rows");

  Matrix values(static_cast<Index>(lines.size() - 1), p);
  Labels rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& line = lines[r];
    if (static_cast<Index>(line.cells.size()) != p + 1) {
      throw Error(ErrorKind::ParseError, where(source, line.number) + ": expected " + std::to_string(p + 1) +
                                             " cells, found " + std::to_string(line.cells.size()));
    }
    rows.push_back(line.cells[0]);
    for (Index j = 0; j < p; ++j) {
      const auto& cell = line.cells[static_cast<std::size_t>(j + 1)];
      const auto v = parse_number(cell);
      if (!v) {
        throw Error(ErrorKind::NonNumericCell, where(source, line.number) + ": column '" +
                                                   cols[static_cast<std::size_t>(j)] + "' value '" + cell + "'");
      }
      values(static_cast<Index>(r - 1), j) = *v;
    }
  }
  try {
    return DataTable(std::move(values), std::move(rows), std::move(cols));
  } catch (const Error& e) {
    throw Error(e.kind(), source + ": " + e.what());
  }
}

DataTable load_table(const std::filesystem::path& path) {
  auto in = open(path);
  return read_table(in, path.string());
}

GroupAssignment read_groups(std::istream& in, const Labels& row_labels, const std::string& source) {
  const auto lines = read_lines(in, source);
  if (lines.empty()) throw Error(ErrorKind::ParseError, where(source, 1) + ": empty file");

  std::unordered_map<std::string, std::size_t> row_index;
  for (std::size_t i = 0; i < row_labels.size(); ++i) row_index.emplace(row_labels[i], i);

  std::vector<std::optional<std::string>> group(row_labels.size());
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.cells.size() != 2) {
      throw Error(ErrorKind::ParseError, where(source, line.number) + ": expected row_label,group_label");
    }
    auto it = row_index.find(line.cells[0]);
    if (it == row_index.end()) {
      if (l == 0) continue;  // header
      throw Error(ErrorKind::RowMismatch, where(source, line.number) + ": unknown row '" + line.cells[0] + "'");
    }
    if (group[it->second]) {
      throw Error(ErrorKind::DuplicateLabel, where(source, line.number) + ": row '" + line.cells[0] + "' listed twice");
    }
    group[it->second] = line.cells[1];
  }
  Labels per_row;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (!group[i]) throw Error(ErrorKind::RowMismatch, source + ": no group for row '" + row_labels[i] + "'");
    per_row.push_back(*group[i]);
  }
  return GroupAssignment::from_row_groups(per_row);
}

GroupAssignment load_groups(const std::filesystem::path& path, const Labels& row_labels) {
  auto in = open(path);
  return read_groups(in, row_labels, path.string());
}

BlockDescriptor read_blocks(std::istream& in, const std::string& source) {
  const auto lines = read_lines(in, source);
  if (lines.empty()) throw Error(ErrorKind::ParseError, where(source, 1) + ": empty file");
  std::vector<Block> blocks;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.cells.size() != 2) {
      throw Error(ErrorKind::ParseError, where(source, line.number) + ": expected block_label,row_count");
    }
    long long count = 0;
    const auto& c = line.cells[1];
    auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
    if (ec != std::errc() || ptr != c.data() + c.size()) {
      if (l == 0) continue;  // header
      throw Error(ErrorKind::NonNumericCell, where(source, line.number) + ": row count '" + c + "'");
    }
    if (count < 1) throw Error(ErrorKind::BlockSizeMismatch, where(source, line.number) + ": row count must be positive");
    blocks.push_back({line.cells[0], static_cast<Index>(count)});
  }
  return BlockDescriptor(std::move(blocks));
}

BlockDescriptor load_blocks(const std::filesystem::path& path) {
  auto in = open(path);
  return read_blocks(in, path.string());
}

void write_table_csv(std::ostream& out, const Matrix& values, const Labels& row_labels, const Labels& col_labels) {
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  out << "\"\"";
  for (const auto& c : col_labels) out << ',' << quoted(c);
  out << '\n';
  for (Index i = 0; i < values.rows(); ++i) {
    out << quoted(row_labels[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < values.cols(); ++j) out << ',' << format_number(values(i, j));
    out << '\n';
  }
}

}  // namespace dcube::io
