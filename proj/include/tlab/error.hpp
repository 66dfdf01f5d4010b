#pragma once

#include <stdexcept>
#include <string>

namespace tlab {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input: a precondition on parameters or data does not hold.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A size or iteration cap was hit.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// A certified inequality that must hold did not.
class CertificationError : public Error {
public:
  using Error::Error;
};

}  // namespace tlab
