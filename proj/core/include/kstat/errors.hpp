#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kstat {

/// Malformed input to a library operation (bad order, mismatched variable counts, ...).
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A symbolic sample size was instantiated where a denominator vanishes.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A set-partition enumeration would exceed the configured ground-size limit.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text (CSV, JSON AST, spec grammar) could not be parsed. Rows and
/// columns are 1-based; zero means "not applicable".
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t row = 0, std::size_t column = 0)
      : std::runtime_error(what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace kstat
