#pragma once

#include <stdexcept>
#include <string>

namespace wellsim {

// Thrown when an iterative or validated computation leaves its accuracy
// budget: root brackets without a sign change, norm drift past tolerance,
// a physical bound violated beyond rounding. Maps to exit code 2 in the CLI.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an output file cannot be opened or written. Exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wellsim
