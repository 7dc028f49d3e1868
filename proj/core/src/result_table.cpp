#include "noma/result_table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "noma/error.hpp"

namespace noma::harness {
namespace {

bool matches(const Cell& cell, ColumnType type) {
  switch (type) {
    case ColumnType::kReal: return std::holds_alternative<double>(cell);
    case ColumnType::kInteger: return std::holds_alternative<std::int64_t>(cell);
    case ColumnType::kText: return std::holds_alternative<std::string>(cell);
  }
  return false;
}

void append_cell(std::string& out, const Cell& cell) {
  char buffer[40];
  if (const auto* v = std::get_if<double>(&cell)) {
    std::snprintf(buffer, sizeof buffer, "%.12g", *v);
    out += buffer;
  } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    std::snprintf(buffer, sizeof buffer, "%lld", static_cast<long long>(*i));
    out += buffer;
  } else {
    out += std::get<std::string>(cell);
  }
}

}  // namespace

ResultTable::ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {
  for (const auto& c : columns_) {
    if (c.name.empty() || c.name.find_first_of(",\n") != std::string::npos) {
      throw std::invalid_argument("column names must be non-empty and free of commas/newlines");
    }
  }
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("row width does not match schema");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!matches(row[i], columns_[i].type)) {
      throw std::invalid_argument("cell type does not match column " + columns_[i].name);
    }
    if (const auto* text = std::get_if<std::string>(&row[i]);
        text && text->find_first_of(",\n\"") != std::string::npos) {
      throw std::invalid_argument("text cells must not contain commas, quotes or newlines");
    }
  }
  rows_.push_back(std::move(row));
}

void ResultTable::add_metadata(std::string key, std::string value) {
  if (key.find('\n') != std::string::npos || value.find('\n') != std::string::npos) {
    throw std::invalid_argument("metadata must be single-line");
  }
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw std::out_of_range("no column named " + name);
}

double ResultTable::real(std::size_t row, const std::string& column) const {
  return std::get<double>(rows_.at(row).at(column_index(column)));
}

std::string render_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata()) {
    out += "# " + key + ": " + value + "\n";
  }
  for (std::size_t i = 0; i < table.columns().size(); ++i) {
    if (i) out += ',';
    out += table.columns()[i].name;
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      append_cell(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

std::size_t write_csv(const ResultTable& table, const std::filesystem::path& destination) {
  const std::string text = render_csv(table);
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open " + destination.string() + " for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.close();
  if (!file) throw Error("failed writing " + destination.string());
  return text.size();
}

}  // namespace noma::harness
