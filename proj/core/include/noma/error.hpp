#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace noma {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical or model-level precondition could not be met
/// (collinear ZF clusters, coincident constellation points, invalid fit window, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed configuration that violates a scenario invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace noma
