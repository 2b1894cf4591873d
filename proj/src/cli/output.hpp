#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cli/config.hpp"

namespace qmetro::cli {

/// Shortest decimal string that reads back to the same double; "nan", "inf", "-inf".
std::string format_number(double x);

using Cell = std::variant<double, long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Free-form key/value remarks, printed after the config echo.
  std::vector<std::pair<std::string, std::string>> notes;

  void add(std::vector<Cell> row);
};

/// "# key = value" echo and note lines, a header line, then one line per row.
std::string to_csv(const Table& table, const RunConfig& cfg);
/// {"config": {...}, "notes": {...}, "rows": [{column: value, ...}, ...]}; NaN as null.
std::string to_json(const Table& table, const RunConfig& cfg);

/// Writes in cfg.format to cfg.out, or stdout when out is empty.
void emit(const Table& table, const RunConfig& cfg);

}  // namespace qmetro::cli
