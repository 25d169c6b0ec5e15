#pragma once

#include <stdexcept>
#include <string>

namespace permsym {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value is outside the set an operation is defined on (unsupported N, unknown irrep, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SizeMismatchError : public Error {
 public:
  using Error::Error;
};

/// Coupling strength outside the bound-state window of the oscillator model.
class UnboundModelError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be an exact integer (character, multiplicity, rank)
/// missed its integer by more than the rounding guard, or an iterative
/// kernel failed to converge.
class NumericalIntegrityError : public Error {
 public:
  using Error::Error;
};

class InfeasibleBasisError : public Error {
 public:
  using Error::Error;
};

}  // namespace permsym
