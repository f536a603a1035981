#pragma once

#include <stdexcept>
#include <string>

namespace sievekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds a configured work or memory cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A configuration or descriptor could not be parsed or is incomplete.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sievekit
