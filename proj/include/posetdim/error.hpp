#pragma once

#include <stdexcept>
#include <string>

namespace posetdim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size or work cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Relation data contains a cycle, so it is not a partial order.
class CycleError : public Error {
 public:
  using Error::Error;
};

/// A supplied total order is not a linear extension of the poset.
class InvalidExtension : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON files, weight specs, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A randomized construction exhausted its retry budget.
class RetryLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace posetdim
