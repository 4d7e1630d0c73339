#include "dcube/report.hpp"

#include "dcube/errors.hpp"
#include "dcube/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dcube {

namespace {

constexpr std::string_view kMagic = "dcube-report 1";

std::string clean(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

Labels clean(Labels labels) {
  for (auto& l : labels) l = clean(std::move(l));
  return labels;
}

template <class T>
const T* find_entry(const std::vector<ReportEntry>& entries, std::string_view name) {
  for (const auto& e : entries) {
    if (const auto* p = std::get_if<T>(&e); p && p->name == name) return p;
  }
  return nullptr;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad(std::size_t line, const std::string& why) {
  throw Error(ErrorKind::ParseError, "report line " + std::to_string(line) + ": " + why);
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad(line, "bad number '" + s + "'");
  return v;
}

Index parse_count(const std::string& s, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) bad(line, "bad count '" + s + "'");
  return static_cast<Index>(v);
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

void Report::check_new(const std::string& name) const {
  for (const auto& e : entries_) {
    const bool clash = std::visit([&](const auto& x) { return x.name == name; }, e);
    if (clash) throw Error(ErrorKind::DuplicateLabel, "report entry '" + name + "'");
  }
}

void Report::add_text(std::string name, std::string value) {
  name = clean(std::move(name));
  check_new(name);
  entries_.emplace_back(TextEntry{std::move(name), clean(std::move(value))});
}

void Report::add_scalar(std::string name, double value) {
  name = clean(std::move(name));
  check_new(name);
  entries_.emplace_back(ScalarEntry{std::move(name), value});
}

void Report::add_vector(std::string name, Labels labels, Vector values) {
  name = clean(std::move(name));
  check_new(name);
  if (static_cast<Index>(labels.size()) != values.size()) {
    throw Error(ErrorKind::DimensionMismatch, "vector entry '" + name + "' label count");
  }
  entries_.emplace_back(VectorEntry{std::move(name), clean(std::move(labels)), std::move(values)});
}

void Report::add_matrix(std::string name, Labels row_labels, Labels col_labels, Matrix values) {
  name = clean(std::move(name));
  check_new(name);
  if (static_cast<Index>(row_labels.size()) != values.rows() || static_cast<Index>(col_labels.size()) != values.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix entry '" + name + "' label count");
  }
  entries_.emplace_back(
      MatrixEntry{std::move(name), clean(std::move(row_labels)), clean(std::move(col_labels)), std::move(values)});
}

const TextEntry* Report::text(std::string_view name) const { return find_entry<TextEntry>(entries_, name); }
const ScalarEntry* Report::scalar(std::string_view name) const { return find_entry<ScalarEntry>(entries_, name); }
const VectorEntry* Report::vector(std::string_view name) const { return find_entry<VectorEntry>(entries_, name); }
const MatrixEntry* Report::matrix(std::string_view name) const { return find_entry<MatrixEntry>(entries_, name); }

std::string Report::serialize() const {
  std::ostringstream out;
  out << kMagic << '\n';
  for (const auto& e : entries_) {
    if (const auto* t = std::get_if<TextEntry>(&e)) {
      out << "text\t" << t->name << '\t' << t->value << '\n';
    } else if (const auto* s = std::get_if<ScalarEntry>(&e)) {
      out << "scalar\t" << s->name << '\t' << format_number(s->value) << '\n';
    } else if (const auto* v = std::get_if<VectorEntry>(&e)) {
      out << "vector\t" << v->name << '\t' << v->values.size() << '\n';
      for (Index i = 0; i < v->values.size(); ++i) {
        out << v->labels[static_cast<std::size_t>(i)] << '\t' << format_number(v->values[i]) << '\n';
      }
    } else if (const auto* m = std::get_if<MatrixEntry>(&e)) {
      out << "matrix\t" << m->name << '\t' << m->values.rows() << '\t' << m->values.cols() << '\n';
      for (const auto& c : m->col_labels) out << '\t' << c;
      out << '\n';
      for (Index i = 0; i < m->values.rows(); ++i) {
        out << m->row_labels[static_cast<std::size_t>(i)];
        for (Index j = 0; j < m->values.cols(); ++j) out << '\t' << format_number(m->values(i, j));
        out << '\n';
      }
    }
  }
  out << "end\n";
  return out.str();
}

Report Report::parse(std::string_view document) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < document.size()) {
    const auto pos = document.find('\n', start);
    if (pos == std::string_view::npos) {
      lines.push_back(document.substr(start));
      break;
    }
    lines.push_back(document.substr(start, pos - start));
    start = pos + 1;
  }
  if (lines.empty() || lines[0] != kMagic) bad(1, "missing report header");

  Report r;
  std::size_t i = 1;
  auto next = [&]() -> std::string_view {
    if (i >= lines.size()) bad(i, "unexpected end of report");
    return lines[i++];
  };
  while (true) {
    const std::size_t line_no = i + 1;
    const auto f = split_tabs(next());
    if (f.size() == 1 && f[0] == "end") break;
    if (f[0] == "text" && f.size() == 3) {
      r.add_text(f[1], f[2]);
    } else if (f[0] == "scalar" && f.size() == 3) {
      r.add_scalar(f[1], parse_double(f[2], line_no));
    } else if (f[0] == "vector" && f.size() == 3) {
      const Index n = parse_count(f[2], line_no);
      Labels labels;
      Vector values(n);
      for (Index k = 0; k < n; ++k) {
        const auto row = split_tabs(next());
        if (row.size() != 2) bad(i, "vector row needs label and value");
        labels.push_back(row[0]);
        values[k] = parse_double(row[1], i);
      }
      r.add_vector(f[1], std::move(labels), std::move(values));
    } else if (f[0] == "matrix" && f.size() == 4) {
      const Index rows = parse_count(f[2], line_no);
      const Index cols = parse_count(f[3], line_no);
      auto header = split_tabs(next());
      if (static_cast<Index>(header.size()) != cols + 1) bad(i, "matrix column header size");
      Labels col_labels(header.begin() + 1, header.end());
      Labels row_labels;
      Matrix values(rows, cols);
      for (Index a = 0; a < rows; ++a) {
        const auto row = split_tabs(next());
        if (static_cast<Index>(row.size()) != cols + 1) bad(i, "matrix row size");
        row_labels.push_back(row[0]);
        for (Index b = 0; b < cols; ++b) values(a, b) = parse_double(row[static_cast<std::size_t>(b + 1)], i);
      }
      r.add_matrix(f[1], std::move(row_labels), std::move(col_labels), std::move(values));
    } else {
      bad(line_no, "unknown entry");
    }
  }
  return r;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::ParseError, "sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 0xf];
  }
  return out;
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.txt", std::ios::binary);
    out << report.serialize();
    if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + (dir / "report.txt").string());
  }
  for (const auto& e : report.entries()) {
    if (const auto* m = std::get_if<MatrixEntry>(&e)) {
      std::ofstream out(dir / (m->name + ".csv"), std::ios::binary);
      io::write_table_csv(out, m->values, m->row_labels, m->col_labels);
    }
  }
}

}  // namespace dcube
