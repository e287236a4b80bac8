#pragma once

#include <stdexcept>
#include <string>

namespace cavityed {

// Invalid physical or numerical parameter (non-positive spacing, bad box, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation evaluated outside its domain (e.g. extension criterion for an unbound state).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Vector or factor sizes that do not match the operator layout.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Point evaluation hit a singularity that the caller must avoid.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent model/gauge/flag combination.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Run-file parse failure. line == 0 means the problem is not tied to a line
// (e.g. a required key is missing).
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cavityed
