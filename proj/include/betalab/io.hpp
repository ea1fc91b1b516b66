#pragma once
// Versioned tabular output: CSV and JSON writers with atomic replacement,
// plus the matching CSV reader so every emitted file round-trips.
//
// File layout (CSV):
//   # schema=<name>/<version>
//   # <extra comment lines, optional>
//   <column>,<column>,...
//   <cell>,<cell>,...
//
// Numeric cells are written with the shortest decimal representation that
// round-trips to the same double, so re-reading a file and re-writing it
// reproduces it byte for byte.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "betalab/errors.hpp"

namespace betalab {

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct csv_table {
  std::string schema;                  ///< schema name, e.g. "constants_rwre"
  int version = 1;                     ///< schema version
  std::vector<std::string> comments;   ///< extra header lines (no leading '#')
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  template <class... Cells>
  void add_row(Cells&&... cells) {
    rows.emplace_back();
    rows.back().reserve(sizeof...(cells));
    (rows.back().push_back(to_cell(std::forward<Cells>(cells))), ...);
  }

  static std::string to_cell(double v) { return format_double(v); }
  static std::string to_cell(int v) { return std::to_string(v); }
  static std::string to_cell(std::int64_t v) { return std::to_string(v); }
  static std::string to_cell(std::uint64_t v) { return std::to_string(v); }
  static std::string to_cell(bool v) { return v ? "1" : "0"; }
  static std::string to_cell(const char* v) { return check_text(v); }
  static std::string to_cell(const std::string& v) { return check_text(v); }

  static std::string check_text(std::string v) {
    if (v.find(',') != std::string::npos ||
        v.find('\n') != std::string::npos) {
      throw validation_error("csv_table: cell text may not contain ',' or newline");
    }
    return v;
  }

  bool operator==(const csv_table& other) const {
    return schema == other.schema && version == other.version &&
           comments == other.comments && columns == other.columns &&
           rows == other.rows;
  }
};

/// Writes `text` to `path` atomically: a temp file in the same directory is
/// renamed over the destination, so readers never observe a partial file.
inline void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + tmp);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw io_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_error("cannot replace: " + path);
  }
}

namespace detail {

inline std::string join_cells(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

inline std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace detail

inline std::string render_csv(const csv_table& table) {
  if (table.schema.empty()) throw validation_error("render_csv: empty schema name");
  std::string text = "# schema=" + table.schema + "/" +
                     std::to_string(table.version) + "\n";
  for (const std::string& c : table.comments) text += "# " + c + "\n";
  text += detail::join_cells(table.columns) + "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw validation_error("render_csv: row arity does not match header");
    }
    text += detail::join_cells(row) + "\n";
  }
  return text;
}

inline void write_csv_atomic(const std::string& path, const csv_table& table) {
  write_text_atomic(path, render_csv(table));
}

/// Parses a file produced by write_csv_atomic.  Inverse of render_csv.
inline csv_table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  csv_table table;
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty file: " + path);
  const std::string prefix = "# schema=";
  if (line.rfind(prefix, 0) != 0) {
    throw io_error("missing schema header: " + path);
  }
  const std::string tag = line.substr(prefix.size());
  const std::size_t slash = tag.rfind('/');
  if (slash == std::string::npos) throw io_error("malformed schema tag: " + path);
  table.schema = tag.substr(0, slash);
  try {
    table.version = std::stoi(tag.substr(slash + 1));
  } catch (const std::exception&) {
    throw io_error("malformed schema version: " + path);
  }
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!have_header && line.rfind("# ", 0) == 0) {
      table.comments.push_back(line.substr(2));
      continue;
    }
    if (line.empty()) continue;
    if (!have_header) {
      table.columns = detail::split_cells(line);
      have_header = true;
      continue;
    }
    table.rows.push_back(detail::split_cells(line));
    if (table.rows.back().size() != table.columns.size()) {
      throw io_error("row arity does not match header: " + path);
    }
  }
  if (!have_header) throw io_error("missing column header: " + path);
  return table;
}

/// Parses a cell back to a double; throws io_error if it is not numeric.
inline double cell_to_double(const std::string& cell) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const std::from_chars_result res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw io_error("cell is not a number: '" + cell + "'");
  }
  return v;
}

}  // namespace betalab
