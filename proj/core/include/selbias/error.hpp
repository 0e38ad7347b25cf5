#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selbias {

// Base for every error raised by the library. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dataset or configuration violates a type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The input is valid but the requested estimator cannot run on it
// (summary data given to the Jackknife, n = 1 with a parametric refit, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed its state budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace selbias
