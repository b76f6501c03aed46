#pragma once

#include <stdexcept>
#include <string>

namespace cfe {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        message_(what),
        line_(line),
        column_(column) {}

  /// The message without the position suffix.
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// A precondition on arguments was violated (arity, dimension, domain).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A resource cap (cell budget, variable cap) was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cfe
