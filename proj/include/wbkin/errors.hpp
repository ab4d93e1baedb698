#pragma once

#include <stdexcept>
#include <string>

namespace wbkin {

/// Malformed or schema-violating input (files, records, flags).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or an otherwise unusable numeric state.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SE(3) logarithm requested where the principal branch is ambiguous
/// (rotation angle within 1e-6 of pi), or an equally degenerate frame
/// extraction.
class BranchError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace wbkin
