#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bosegas {

// Column-labelled numeric table with '#'-prefixed metadata lines. Failed
// cells are NaN, emitted as the literal "nan" in CSV and null in JSON.
struct Table {
  std::vector<std::string> meta;  // emitted as "# key: value" lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::string format_cell(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (const auto& line : table.meta) out << "# " << line << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << detail::format_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

inline Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.find_first_not_of("# ");
      table.meta.push_back(start == std::string::npos ? "" : line.substr(start));
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      table.columns = cells;
      have_header = true;
      continue;
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (const auto& c : cells)
      values.push_back(c == "nan" ? std::numeric_limits<double>::quiet_NaN()
                                  : std::stod(c));
    table.rows.push_back(std::move(values));
  }
  return table;
}

inline std::string to_json(const Table& table) {
  nlohmann::json j;
  j["meta"] = table.meta;
  j["columns"] = table.columns;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json jrow = nlohmann::json::array();
    for (double v : row) {
      if (std::isnan(v))
        jrow.push_back(nullptr);
      else
        jrow.push_back(v);
    }
    rows.push_back(std::move(jrow));
  }
  return j.dump(2) + "\n";
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace bosegas
