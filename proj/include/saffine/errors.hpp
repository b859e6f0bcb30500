// Exception types thrown by the saffine core.
#pragma once

#include <stdexcept>
#include <string>

namespace saffine {

/// Malformed or out-of-contract input (dimension mismatch, singular matrix,
/// zero denominator, inadmissible parameter). Maps to exit code 2 in the CLI.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A curve germ whose coordinates are linearly dependent to the working
/// truncation order, i.e. the germ lies in a hyperplane.
class HyperplaneDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The truncation order is too small to read off an exponent profile.
class InsufficientOrder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace saffine
