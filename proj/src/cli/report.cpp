#include "tdc/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "tdc/tolerances.hpp"

namespace tdc::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

Table& Report::table(std::string name, std::vector<std::string> columns) {
  tables.push_back(Table{std::move(name), std::move(columns), {}});
  return tables.back();
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvCell {
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_real(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::string& v) const { return csv_escape(v); }
};

struct JsonCell {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(long long v) const { return v; }
  nlohmann::ordered_json operator()(double v) const {
    if (!std::isfinite(v)) return format_real(v);
    return v;
  }
  nlohmann::ordered_json operator()(bool v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
};

}  // namespace

void write_csv(const Report& r, std::ostream& out) {
  out << "# version: " << TDC_VERSION << "\n";
  out << "# command: " << r.command << "\n";
  out << "# seed: " << r.seed << "\n";
  out << "# command_line: " << r.command_line << "\n";
  for (const auto& [key, value] : tol().entries()) {
    out << "# tol." << key << ": " << format_real(value) << "\n";
  }
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const Table& table = r.tables[t];
    out << "\n# table: " << table.name << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << csv_escape(table.columns[c]);
    }
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << std::visit(CsvCell{}, row[c]);
      }
      out << "\n";
    }
  }
}

void write_json(const Report& r, std::ostream& out) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json tolerances;
  for (const auto& [key, value] : tol().entries()) tolerances[key] = value;
  doc["meta"] = {{"version", TDC_VERSION},
                 {"command", r.command},
                 {"seed", r.seed},
                 {"command_line", r.command_line},
                 {"tolerances", tolerances}};
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  for (const auto& table : r.tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json cells = nlohmann::ordered_json::array();
      for (const auto& cell : row) cells.push_back(std::visit(JsonCell{}, cell));
      rows.push_back(std::move(cells));
    }
    tables[table.name] = {{"columns", table.columns}, {"rows", std::move(rows)}};
  }
  doc["tables"] = std::move(tables);
  out << doc.dump(2) << "\n";
}

void write_report(const Report& r, Format f, std::ostream& out) {
  if (f == Format::csv) {
    write_csv(r, out);
  } else {
    write_json(r, out);
  }
}

}  // namespace tdc::cli
