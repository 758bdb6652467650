#ifndef NLW_IO_REPORT_HPP
#define NLW_IO_REPORT_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "nlw/core/error.hpp"

namespace nlw {

/// Shortest round-trip decimal form; identical on every run.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

/// Column-named table written as RFC 4180 CSV.
class CsvTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    require(row.size() == columns_.size(), errc::dimension_mismatch, "CsvTable: row width mismatch");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < columns_.size(); ++j) os << (j ? "," : "") << quote(columns_[j]);
    os << "\r\n";
    for (const auto& row : rows_) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << render(row[j]);
      os << "\r\n";
    }
    return os.str();
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), errc::io_error, "cannot open " + path);
    out << str();
    require(static_cast<bool>(out), errc::io_error, "write failed: " + path);
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  static std::string render(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return quote(std::get<std::string>(c));
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace nlw

#endif
