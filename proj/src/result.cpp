#include "wellsim/result.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "wellsim/errors.hpp"

namespace wellsim {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

std::string cell_to_csv(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

nlohmann::ordered_json cell_to_json(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  return std::get<std::string>(cell);
}

}  // namespace

std::string to_csv(const ExperimentResult& result) {
  std::string out;
  out += "# version=";
  out += kVersion;
  out += '\n';
  for (const auto& [key, value] : result.metadata) {
    out += "# ";
    out += key;
    out += '=';
    out += cell_to_csv(value);
    out += '\n';
  }
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += result.columns[c];
  }
  out += '\n';
  for (const auto& row : result.rows) {
    if (row.size() != result.columns.size())
      throw std::invalid_argument("row width does not match column count");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += cell_to_csv(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ExperimentResult& result) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : result.metadata) meta[key] = cell_to_json(value);
  doc["metadata"] = std::move(meta);
  doc["columns"] = result.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    if (row.size() != result.columns.size())
      throw std::invalid_argument("row width does not match column count");
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const auto& cell : row) jrow.push_back(cell_to_json(cell));
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit(const ExperimentResult& result, OutputFormat format, const std::string& path) {
  std::string payload = (format == OutputFormat::csv) ? to_csv(result) : to_json(result);
  if (path.empty() || path == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << payload;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace wellsim
