#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jagged {

/// Base class for all data errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line where parsing failed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidMatrixError : public Error {
 public:
  using Error::Error;
};

/// A format builder was handed a matrix containing rows without non-zeros.
class EmptyRowError : public Error {
 public:
  explicit EmptyRowError(std::size_t row)
      : Error("row " + std::to_string(row) + " has no non-zeros"), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class InfeasibleSpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace jagged
