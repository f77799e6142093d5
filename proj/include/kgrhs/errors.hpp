#pragma once

#include <stdexcept>
#include <string>

namespace kgrhs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NoRealRoot : public Error {
 public:
  using Error::Error;
};

class BelowRest : public Error {
 public:
  using Error::Error;
};

class StencilOverflow : public Error {
 public:
  using Error::Error;
};

class NoisePlateau : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class NonUnitaryPhase : public Error {
 public:
  using Error::Error;
};

// Raised for problems the model leaves undefined (quaternionic scattering amplitudes).
class NotSpecified : public Error {
 public:
  using Error::Error;
};

}  // namespace kgrhs
