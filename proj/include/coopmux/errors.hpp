// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace coopmux {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix dimensions exceed the ceiling or do not conform.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Floating-point breakdown (e.g. a Cholesky pivot that is not positive).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A caller violated a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent protocol / antenna configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Estimator invoked on a topology the scheme does not support.
class SchemeError : public Error {
 public:
  using Error::Error;
};

}  // namespace coopmux
