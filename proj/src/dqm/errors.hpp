#pragma once

#include <stdexcept>
#include <string>

namespace dqm {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was violated by the caller.
struct PreconditionError : Error {
  using Error::Error;
};

// An exact enumeration would exceed the configured cap.
struct EnumerationCapError : Error {
  using Error::Error;
};

// Configuration text failed to parse or validate.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace dqm
