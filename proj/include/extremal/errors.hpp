#pragma once

#include <stdexcept>
#include <string>

namespace extremal {

// Bad argument or precondition (CLI exit 64).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested registry entry or method does not exist for this set/norm.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solver or quadrature could not deliver a trustworthy number (CLI exit 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace extremal
