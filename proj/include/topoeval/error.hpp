#pragma once

#include <stdexcept>
#include <string>

namespace topoeval {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two inputs that must share a shape do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A metric is mathematically undefined for the given inputs
/// (empty scope, empty skeleton, zero variance, ...).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

/// Unreadable, corrupt or unsupported file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace topoeval
