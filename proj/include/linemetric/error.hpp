#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linemetric {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Line and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : Error(locate(message, line, column)), message_(std::move(message)), line_(line), column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string locate(const std::string& message, std::size_t line, std::size_t column) {
    std::string where;
    if (line != 0) where += "line " + std::to_string(line);
    if (column != 0) {
      if (!where.empty()) where += ", ";
      where += "column " + std::to_string(column);
    }
    return where.empty() ? message : where + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Two irrational scalars from different quadratic fields met in one operation.
class RadicandMismatch : public Error {
 public:
  using Error::Error;
};

// A matrix that is not square or does not match its label list.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A predicate that requires a metric was handed a matrix with violations.
class InvalidMetric : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's domain (negative radius, unknown label, singular map, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A cross-check between two independent routes disagreed. Always a defect.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace linemetric
