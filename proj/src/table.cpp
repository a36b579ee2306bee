#include "couplinglab/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "couplinglab/errors.hpp"

namespace couplinglab {

namespace {

bool same_value(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(line);
  while (std::getline(in, current, sep)) parts.push_back(current);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& token) {
  if (token == "nan") return std::nan("");
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw InvalidParameter("malformed CSV number: '" + token + "'");
  return value;
}

void write_body(const SweepTable& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_number(row[i]);
    }
    out << '\n';
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::size_t SweepTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidParameter("no column named '" + std::string(name) + "'");
}

bool SweepTable::has_column(std::string_view name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

std::vector<double> SweepTable::column_values(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(c));
  return out;
}

std::string SweepTable::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return {};
}

void SweepTable::validate() const {
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw InvalidParameter("sweep table is not rectangular");
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i][0] > rows[i - 1][0])) {
      throw InvalidParameter("sweep table bias column is not strictly increasing");
    }
  }
}

bool SweepTable::operator==(const SweepTable& other) const {
  if (metadata != other.metadata || header != other.header || rows.size() != other.rows.size()) {
    return false;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != other.rows[i].size()) return false;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (!same_value(rows[i][j], other.rows[i][j])) return false;
    }
  }
  return true;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << '=' << value << '\n';
  write_body(table, out);
}

std::string csv_body(const SweepTable& table) {
  std::ostringstream out;
  write_body(table, out);
  return out.str();
}

SweepTable read_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidParameter("malformed metadata line: " + line);
      table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      table.header = split(line, ',');
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& token : split(line, ',')) row.push_back(parse_number(token));
    if (row.size() != table.header.size()) {
      throw InvalidParameter("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                             std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidParameter("CSV has no header line");
  return table;
}

}  // namespace couplinglab
