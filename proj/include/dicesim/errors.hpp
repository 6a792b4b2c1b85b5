#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dicesim {

/// Input rejected by a validating operation (bad flag value, undersized
/// sample, unsupported dice, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed trace or data file. Carries the 1-based line number and the
/// offending field name so callers can point at the exact spot.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + field + ": " + message),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace dicesim
