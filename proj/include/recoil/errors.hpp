#pragma once

#include <stdexcept>
#include <string>

namespace recoil {

// Exception hierarchy. The CLI maps each family onto an exit code:
// ConfigError/IoError/DomainError -> 1, ValidityError -> 2, ToleranceError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when a requested run lies outside the regime where the
/// long-time density-matrix form holds (Γt below the hard gate).
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// Integrator failures (step-size underflow, norm drift).
class IntegratorError : public Error {
 public:
  IntegratorError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// An oracle comparison exceeded its tolerance.
class ToleranceError : public Error {
 public:
  ToleranceError(std::string metric, double value, double limit)
      : Error("tolerance breach: " + metric + " = " + std::to_string(value) +
              " exceeds " + std::to_string(limit)),
        metric_(std::move(metric)),
        value_(value),
        limit_(limit) {}

  const std::string& metric() const noexcept { return metric_; }
  double value() const noexcept { return value_; }
  double limit() const noexcept { return limit_; }

 private:
  std::string metric_;
  double value_;
  double limit_;
};

}  // namespace recoil
