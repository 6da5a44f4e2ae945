#include "magnonspec/io.hpp"

#include <Eigen/Core>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace magnonspec {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width does not match table columns");
  rows.push_back(std::move(row));
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::get<std::string>(cell);
}

Cell parse_cell(const std::string& text) {
  long long i = 0;
  auto [iend, iec] = std::from_chars(text.data(), text.data() + text.size(), i);
  if (iec == std::errc() && iend == text.data() + text.size()) return i;
  try {
    std::size_t used = 0;
    const double d = std::stod(text, &used);
    if (used == text.size()) return d;
  } catch (const std::logic_error&) {
  }
  return text;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  table.columns = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    for (const auto& field : split_line(line)) row.push_back(parse_cell(field));
    table.add_row(std::move(row));
  }
  return table;
}

void write_json(std::ostream& out, const Table& table, const Provenance& provenance) {
  // nlohmann::ordered_json keeps insertion order and prints doubles with
  // round-trip precision.
  nlohmann::ordered_json doc;
  nlohmann::ordered_json prov;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : provenance) config[k] = v;
  prov["config"] = config;
  prov["versions"] = {{"magnonspec", MAGNONSPEC_VERSION},
                      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)}};
  doc["provenance"] = prov;
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Cell& cell : row) std::visit([&r](const auto& v) { r.push_back(v); }, cell);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

Table read_json(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  Table table;
  table.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& r : doc.at("rows")) {
    std::vector<Cell> row;
    for (const auto& v : r) {
      if (v.is_number_integer()) {
        row.emplace_back(v.get<long long>());
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else {
        row.emplace_back(v.get<std::string>());
      }
    }
    table.add_row(std::move(row));
  }
  return table;
}

void emit(const Table& table, OutputFormat format, const Provenance& provenance, const std::string& path) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (path != "-") {
    file.open(path);
    if (!file) throw std::runtime_error("cannot write output file " + path);
    out = &file;
  }
  if (format == OutputFormat::csv) {
    write_csv(*out, table);
  } else {
    write_json(*out, table, provenance);
  }
  out->flush();
  if (!*out) throw std::runtime_error("error while writing " + path);
}

}  // namespace magnonspec
