#pragma once

#include <stdexcept>
#include <string>

namespace akh {

/// Malformed or inconsistent input (tangle files, caller preconditions).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant failed while building or checking an object.
/// Signals a bug or a convention mismatch rather than bad input.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace akh
