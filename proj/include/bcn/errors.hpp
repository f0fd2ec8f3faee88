#pragma once

#include <stdexcept>
#include <string>

namespace bcn {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A dimension product left the supported index range.
class DimensionOverflowError : public Error {
 public:
  explicit DimensionOverflowError(const std::string& what) : Error(what) {}
};

/// Operands whose shapes do not fit together.
class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

/// Value/label lookup failures, bad arities, out-of-range indices.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Syntax or semantic error in a textual source (DSL or set expression).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace bcn
