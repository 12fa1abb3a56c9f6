#pragma once

#include <cstdint>
#include <deque>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace tdc::cli {

/// Empty, integer, real, boolean or text value in a report table.
using Cell = std::variant<std::monostate, long long, double, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; throws std::logic_error on a column-count mismatch.
  void add(std::vector<Cell> row);
};

/// A command's output: provenance metadata followed by named tables.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::string command_line;
  std::deque<Table> tables;  // references from table() stay valid

  Table& table(std::string name, std::vector<std::string> columns);
};

enum class Format { csv, json };

/// CSV layout: `# key: value` metadata lines (version, command, seed,
/// command line, one line per tolerance), then each table as
/// `# table: <name>`, a header line and the data rows, tables separated by
/// a blank line. Reals use 17 significant digits; empty cells are blank.
void write_csv(const Report& r, std::ostream& out);

/// JSON layout: {"meta": {...}, "tables": {name: {"columns": [...],
/// "rows": [[...], ...]}}}; empty cells are null.
void write_json(const Report& r, std::ostream& out);

void write_report(const Report& r, Format f, std::ostream& out);

/// %.17g, with "nan"/"inf"/"-inf" for non-finite values.
std::string format_real(double x);

}  // namespace tdc::cli
