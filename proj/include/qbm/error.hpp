#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument lies within pole_tolerance of a pole of a special function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value type was constructed with parameters that violate its invariants.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class DenominatorZero : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration ran out of subdivisions before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved_error, double requested_error)
      : Error(what), achieved_(achieved_error), requested_(requested_error) {}

  double achieved_error() const noexcept { return achieved_; }
  double requested_error() const noexcept { return requested_; }

 private:
  double achieved_;
  double requested_;
};

/// A Matsubara pole collides with a cyclotron pole; the simple-pole residue
/// formula does not apply.
class PoleCoincidenceError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Classifications along an omega_c grid went oscillatory and then back.
class NonMonotoneFlip : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbm
