#pragma once

#include <stdexcept>
#include <string>

namespace polyirs {

/// Parameters that violate a construction precondition (duplicate points,
/// K >= N, non-prime modulus, t out of range, ...).
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// API misuse: operands from the wrong field, shape mismatches.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Symbols handed to interpolation are not (tolerance-)consistent with any
/// codeword.
class NotACodeword : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyirs
