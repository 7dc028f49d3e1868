#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace noma::harness {

enum class ColumnType { kReal, kInteger, kText };

struct Column {
  std::string name;
  ColumnType type = ColumnType::kReal;

  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::variant<double, std::int64_t, std::string>;

/// Typed rows plus `#`-prefixed metadata.
class ResultTable {
 public:
  explicit ResultTable(std::vector<Column> columns);

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept {
    return metadata_;
  }

  /// Throws std::invalid_argument when the row does not match the schema.
  void add_row(std::vector<Cell> row);
  void add_metadata(std::string key, std::string value);

  /// Index of the named column; throws std::out_of_range when absent.
  std::size_t column_index(const std::string& name) const;
  double real(std::size_t row, const std::string& column) const;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Metadata lines `# key: value`, then the header, then one line per row.
/// Reals use 12 significant digits; every line ends with '\n'.
std::string render_csv(const ResultTable& table);

/// Writes render_csv(table); returns the byte count. Throws noma::Error naming
/// the path on I/O failure.
std::size_t write_csv(const ResultTable& table, const std::filesystem::path& destination);

}  // namespace noma::harness
