#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace magnonspec {

using Cell = std::variant<long long, double, std::string>;

/// Column-ordered result table; the unit of CSV/JSON emission.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

/// Doubles use 17 significant digits so that parsing recovers them exactly.
std::string format_double(double value);

void write_csv(std::ostream& out, const Table& table);
/// Reads a CSV written by write_csv; numeric-looking cells become numbers.
Table read_csv(std::istream& in);

/// Ordered key/value echo of the run configuration.
using Provenance = std::map<std::string, std::string>;

void write_json(std::ostream& out, const Table& table, const Provenance& provenance);
Table read_json(std::istream& in);

/// Writes `table` to `path` ("-" is stdout).  Throws std::runtime_error when
/// the path cannot be opened.
void emit(const Table& table, OutputFormat format, const Provenance& provenance, const std::string& path);

}  // namespace magnonspec
