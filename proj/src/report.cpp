#include "qibound/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qibound/errors.hpp"

namespace qibound::report {

Format parse_format(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ValidationError("unknown format '" + name + "' (want table|csv|json)");
}

json cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json cell(const std::string& v) { return v; }

void Table::add_row(std::vector<json> row) {
  if (row.size() != columns.size())
    throw ValidationError("report row width does not match the column set");
  rows.push_back(std::move(row));
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string to_csv(const Table& table) {
  std::ostringstream out;
  out << "# " << table.title << "\n";
  for (auto it = table.meta.begin(); it != table.meta.end(); ++it)
    out << "# " << it.key() << " = " << it.value().dump() << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << csv_field(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
  return out.str();
}

json to_json(const Table& table) {
  json j;
  j["title"] = table.title;
  j["meta"] = table.meta;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j;
}

std::string to_table_text(const Table& table) {
  const auto is_db = [&](const std::string& col) {
    for (const auto& c : table.db_columns)
      if (c == col) return true;
    return false;
  };

  std::vector<std::vector<std::string>> cells;
  cells.push_back(table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const json& v = row[i];
      if (v.is_number_float()) {
        char buf[40];
        if (is_db(table.columns[i]))
          std::snprintf(buf, sizeof(buf), "%.2f", v.get<double>());
        else
          std::snprintf(buf, sizeof(buf), "%.6g", v.get<double>());
        line.emplace_back(buf);
      } else if (v.is_string()) {
        line.push_back(v.get<std::string>());
      } else {
        line.push_back(v.dump());
      }
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(table.columns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], line[i].size());

  std::ostringstream out;
  out << table.title << "\n";
  for (auto it = table.meta.begin(); it != table.meta.end(); ++it)
    out << "  " << it.key() << " = " << it.value().dump() << "\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    out << "  ";
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      out << cells[r][i];
      if (i + 1 < cells[r].size())
        out << std::string(widths[i] - cells[r][i].size() + 2, ' ');
    }
    out << "\n";
    if (r == 0) {
      std::size_t total = 2;
      for (std::size_t wv : widths) total += wv + 2;
      out << "  " << std::string(total > 4 ? total - 4 : 1, '-') << "\n";
    }
  }
  return out.str();
}

void emit(const Table& table, Format format, const std::string& path) {
  std::string payload;
  switch (format) {
    case Format::table: payload = to_table_text(table); break;
    case Format::csv: payload = to_csv(table); break;
    case Format::json: payload = to_json(table).dump(2) + "\n"; break;
  }
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write output file: " + path);
  out << payload;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace qibound::report
