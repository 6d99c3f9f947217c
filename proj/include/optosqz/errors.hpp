#pragma once

#include <stdexcept>
#include <string>

namespace optosqz {

// Bad user input: out-of-range parameter, unknown key, malformed value.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to produce a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Covariance data that violates the uncertainty relation or has det <= 0.
class UnphysicalStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace optosqz
