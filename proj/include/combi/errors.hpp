#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace combi {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
    if (line == 0) return msg;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A value violates a domain invariant (invalid word, map, geometry, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold for its arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A search guard or iteration budget was exhausted.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent computations disagree. Always a library bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace combi
