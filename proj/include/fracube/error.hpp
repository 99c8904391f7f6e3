#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fracube {

/// Malformed input text. Line and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A computation would need more memory than the configured budget allows.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::uint64_t required, std::uint64_t allowed)
      : std::runtime_error(what + " (requires " + std::to_string(required) + " bytes, budget " +
                           std::to_string(allowed) + " bytes)"),
        detail_(what),
        required_(required),
        allowed_(allowed) {}

  /// The description without the byte counts.
  const std::string& detail() const { return detail_; }
  std::uint64_t required() const { return required_; }
  std::uint64_t allowed() const { return allowed_; }

 private:
  std::string detail_;
  std::uint64_t required_;
  std::uint64_t allowed_;
};

/// Arguments outside an operation's domain (bad dimension, unknown node, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fracube
