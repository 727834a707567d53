#pragma once

#include <stdexcept>
#include <string>

namespace xorrep {

// An enumeration or exact computation would exceed its configured budget or
// the capacity of a fixed-width representation.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad game data, dimension mismatch, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural precondition of a transformation does not hold. The message
// names the lemma-level condition that failed.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xorrep
