#pragma once

#include <stdexcept>
#include <string>

namespace gsqg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: grid, parameters or run config violate an invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A field carries NaN/Inf, or violates Hermitian symmetry.
class InvalidFieldError : public Error {
 public:
  using Error::Error;
};

/// An index (dyadic block, mode) lies outside the admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (t < 0, exponent out of a lemma range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A multiplier that is singular at k = 0 was applied to a field with a nonzero mean.
class SingularModeError : public Error {
 public:
  using Error::Error;
};

/// A quantity is undefined for the given input (zero field in a ratio, empty support, ...).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class OrderingError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised by the time stepper when the velocity or the field stops being finite.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time, double last_l2_norm, double last_max_velocity)
      : Error(what), time_(time), last_l2_norm_(last_l2_norm), last_max_velocity_(last_max_velocity) {}

  double time() const noexcept { return time_; }
  double last_l2_norm() const noexcept { return last_l2_norm_; }
  double last_max_velocity() const noexcept { return last_max_velocity_; }

 private:
  double time_;
  double last_l2_norm_;
  double last_max_velocity_;
};

}  // namespace gsqg
