#pragma once

#include <stdexcept>
#include <string>

namespace adal {

/// Operand shapes do not agree (matrix dimension, vector length).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The shifted Gram matrix of the constraint operator is numerically
/// singular, which means the equality constraints are linearly dependent.
class FactorizationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The symmetric eigensolver did not converge.
class EigFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace adal
