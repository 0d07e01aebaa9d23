#pragma once

#include <stdexcept>
#include <string>

namespace qpol {

// Precondition violation on caller-supplied input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but the requested construction is undefined
// (identical endpoints, unpolarized light, circular principal axes, ...).
class DegenerateInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Two scenario halves handed to the correspondence report do not belong together.
class PairingError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A function sampled by a numerical oracle returned NaN or infinity.
class NonFiniteValue : public std::domain_error {
 public:
  NonFiniteValue(const std::string& what, double abscissa)
      : std::domain_error(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

// A post-condition check on computed output failed (endpoint fidelity,
// realness of a lifted Mueller matrix, ...).
class NumericalGateFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpol
