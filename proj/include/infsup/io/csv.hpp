#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace infsup {

/// 17 significant digits, enough to round-trip any double.
std::string csv_number(double v);
std::string csv_number(std::size_t v);

/// A header row plus data rows, rendered with ',' separators and '\n' endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Throws InvalidArgument when the field count differs from the header.
  void add_row(std::vector<std::string> fields);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to a temporary sibling file and renames it over `path`.
/// Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace infsup
