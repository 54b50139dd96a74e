#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Tabular experiment output with ordered metadata, serialized to CSV or
// JSON. Formatting is locked down (12 significant digits, fixed key order)
// so identical runs produce byte-identical files.

namespace wellsim {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<std::int64_t, double, std::string>;

struct ExperimentResult {
  std::vector<std::pair<std::string, Cell>> metadata;  // emitted in insertion order
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { csv, json };

// Shortest representation that round-trips 12 significant digits.
std::string format_number(double value);

std::string to_csv(const ExperimentResult& result);
std::string to_json(const ExperimentResult& result);

// Writes to the given path, or to stdout when path is empty or "-".
// Unwritable paths raise IoError.
void emit(const ExperimentResult& result, OutputFormat format, const std::string& path);

}  // namespace wellsim
