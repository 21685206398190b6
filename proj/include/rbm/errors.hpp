#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbm {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of incompatible lengths or dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An index outside its admissible range.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// An operation was called on an input outside its domain, e.g. a spin^c
// criterion on a non-orientable matrix.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed matrix text. Line and column are 1-based; 0 means "not tied to a
// particular position".
class ParseError : public Error {
 public:
  enum class Kind { Shape, Triangularity, Token };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& what)
      : Error(format(line, column, what)), kind_(kind), line_(line), column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& what) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace rbm
