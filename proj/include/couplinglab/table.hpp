// Tabular sweep results and their CSV form.
//
// CSV layout: `# key=value` metadata lines, one header line, then data rows.
// Numbers are written with 17 significant digits so a write/read cycle is
// lossless; failed points carry `nan`.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace couplinglab {

struct SweepTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws InvalidParameter if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  std::vector<double> column_values(std::string_view name) const;
  /// Metadata value for key, or empty string.
  std::string meta(std::string_view key) const;

  /// Throws InvalidParameter unless rows are rectangular and the first
  /// column is strictly increasing.
  void validate() const;

  /// Equality with nan == nan, so tables with failed points compare equal.
  bool operator==(const SweepTable& other) const;
};

void write_csv(const SweepTable& table, std::ostream& out);
SweepTable read_csv(std::istream& in);

/// Header and data rows only: the part of the CSV that is reproducible
/// byte-for-byte for a given configuration.
std::string csv_body(const SweepTable& table);

std::string format_number(double value);

}  // namespace couplinglab
