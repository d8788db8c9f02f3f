#pragma once

#include <stdexcept>
#include <string>

namespace cosilt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported user input (spec files, unknown names, bad shapes).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Matrix or module shapes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a finite field was asked to run over Q.
class UnsupportedFieldError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Hereditary input whose underlying graph is not Dynkin.
class RepresentationInfiniteError : public InputError {
 public:
  using InputError::InputError;
};

/// A computed certificate contradicts a proven statement. Always a bug or
/// an incomplete catalog, never a user mistake.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cosilt
