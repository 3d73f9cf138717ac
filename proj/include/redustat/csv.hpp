#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace redustat {

/// Comma-separated table without quoting. The first line is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header, if present.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Throws SchemaError on ragged rows or an empty document.
CsvTable parse_csv(std::string_view text);

/// Optional numeric cell: empty means absent. Throws SchemaError on garbage.
std::optional<double> parse_number(std::string_view cell, const std::string& where);

}  // namespace redustat
