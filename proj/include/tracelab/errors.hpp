#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tracelab {

// Malformed textual input. Line and column are 1-based; zero means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An input is valid but larger than what an exact routine is allowed to handle.
class SizeLimitError : public std::length_error {
 public:
  explicit SizeLimitError(const std::string& what, double required = 0.0)
      : std::length_error(what), required_(required) {}

  // Work or memory estimate the call would have needed, when known.
  double required() const { return required_; }

 private:
  double required_;
};

}  // namespace tracelab
