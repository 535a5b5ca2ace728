#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhorn {

class QhornError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape disagreements between operands.
class DimensionError : public QhornError {
 public:
  using QhornError::QhornError;
};

// An operation was called outside its domain (non-unitary coin, null event, ...).
class PreconditionError : public QhornError {
 public:
  using QhornError::QhornError;
};

class ParseError : public QhornError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : QhornError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

// A decorated predicate resolved to something its level does not allow.
class DecorationError : public QhornError {
 public:
  explicit DecorationError(const std::string& what)
      : QhornError("decoration violation: " + what) {}
};

}  // namespace qhorn
