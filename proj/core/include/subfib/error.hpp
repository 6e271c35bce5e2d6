#pragma once

#include <stdexcept>
#include <string>

namespace subfib {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed a value outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An exact integer operation exceeded the supported width.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// No ordered pair repeated within the step budget.
class NonterminationSuspected : public Error {
 public:
  using Error::Error;
};

// A term list claimed to be a cycle does not obey the step rule.
class InconsistentCycle : public Error {
 public:
  using Error::Error;
};

// The parity/coprimality structure does not split into runs.
class NotDecomposable : public Error {
 public:
  using Error::Error;
};

}  // namespace subfib
