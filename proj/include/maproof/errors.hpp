#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maproof {

// Caller violated an API contract (bad arity, mixed fields, out-of-range
// parameter). Maps to CLI exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined request: inverse of zero, duplicate abscissae.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A parameter choice would exceed the representation budget (extension degree,
// 62-bit moduli, oracle enumeration caps). Maps to CLI exit code 3.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input that does not follow one of the grammars. Carries a 1-based
// position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace maproof
