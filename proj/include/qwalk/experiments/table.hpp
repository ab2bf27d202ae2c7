#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwalk::experiments {

/// %.12g, the format for every probability and derived real column.
inline std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

inline std::string fmt_ms(double ms) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

/// One CSV row; cells are pre-formatted so output is byte-stable.
using ResultRow = std::vector<std::string>;

/// A fixed-schema result table plus "# key = value" provenance comments.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::string>> comments;
  std::vector<ResultRow> rows;

  void add(ResultRow row) {
    if (row.size() != columns.size()) throw std::logic_error("row does not match table schema");
    rows.push_back(std::move(row));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw std::out_of_range("no column " + name);
  }
};

namespace detail {

inline void write_cell(std::ostream& os, const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    os << cell;
    return;
  }
  os << '"';
  for (char ch : cell) {
    if (ch == '"') os << '"';
    os << ch;
  }
  os << '"';
}

inline void write_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    write_cell(os, cells[i]);
  }
  os << '\n';
}

}  // namespace detail

inline void write_csv(std::ostream& os, const ResultTable& table) {
  for (const auto& [key, value] : table.comments) os << "# " << key << " = " << value << '\n';
  detail::write_line(os, table.columns);
  for (const auto& row : table.rows) detail::write_line(os, row);
}

}  // namespace qwalk::experiments
