#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qibound::report {

using json = nlohmann::ordered_json;

enum class Format { table, csv, json };

Format parse_format(const std::string& name);

// Uniform emission unit: named columns, one json value per cell, plus a
// metadata block (seed, tolerances, version) mirrored into every format.
// Non-finite doubles are canonicalized to the strings "inf"/"-inf"/"nan" so
// the json form round-trips.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<std::string> db_columns;  // rendered with two decimals in table mode
  json meta;

  void add_row(std::vector<json> row);
};

json cell(double v);
json cell(const std::string& v);

std::string to_csv(const Table& table);
json to_json(const Table& table);
std::string to_table_text(const Table& table);

// Writes to `path`, or stdout when empty.
void emit(const Table& table, Format format, const std::string& path);

}  // namespace qibound::report
