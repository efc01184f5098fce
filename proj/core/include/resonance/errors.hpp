#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation too close to a pole (or a zero of a reciprocal gamma factor).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Index or interval does not fit the data it refers to.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed experiment configuration or command line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure did not reach its requested accuracy.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Requested feature is outside what the library models.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace resonance
