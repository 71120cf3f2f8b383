#pragma once

#include <stdexcept>
#include <string>

namespace sturm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Arithmetic between two different quadratic fields was requested.
class MixedRadicalError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or stabilization cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A verifier could not confirm a statement that is known to hold.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace sturm
