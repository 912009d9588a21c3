#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace induced {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A recurrence table is too short for the requested degree or quadrature size.
class InsufficientCoefficients : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative numerical procedure did not converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// The measure family/parameters have no available recurrence coefficients.
class UnsupportedMeasure : public Error {
 public:
  using Error::Error;
};

// Coefficients that cannot come from a positive measure.
class InconsistentCoefficients : public Error {
 public:
  using Error::Error;
};

class IllConditionedDesign : public Error {
 public:
  IllConditionedDesign(const std::string& what, double discrepancy)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

// The brute-force oracle could not reach its accuracy target.
class OracleAccuracyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace induced
