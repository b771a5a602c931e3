#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mealy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document. line() is 0 when the position is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structurally invalid automaton, tileset or argument.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PreconditionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace mealy
