#pragma once

#include <stdexcept>
#include <string>

namespace tautcoh {

/// Malformed or out-of-contract user input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size cap or precondition refusal. Reported like input errors.
class Refusal : public InputError {
 public:
  using InputError::InputError;
};

/// No realization of the requested kind exists over the chosen field.
class UnrealizableError : public InputError {
 public:
  using InputError::InputError;
};

/// An internal invariant failed, e.g. d*d != 0 (CLI exit code 3).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tautcoh
