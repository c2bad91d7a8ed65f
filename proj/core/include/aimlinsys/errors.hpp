#pragma once

#include <stdexcept>
#include <string>

namespace aimlinsys {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by an exactly-zero polynomial or rational function.
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where a denominator vanishes.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double location) : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// An intermediate polynomial exceeded the degree guard, or an iteration
/// budget was exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A termination ratio whose denominator is identically zero.
class DegenerateRatioError : public Error {
 public:
  using Error::Error;
};

/// Constant-coefficient system with ω = 0, λ = ρ and s ≠ 0.
class DefectiveSystemError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A closed-form α has a singularity inside the requested domain.
class DomainRestrictionError : public Error {
 public:
  DomainRestrictionError(const std::string& what, double pole) : Error(what), pole_(pole) {}
  double pole_location() const noexcept { return pole_; }

 private:
  double pole_;
};

/// Invalid family parameters, constraint violations, bad preconditions.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The Runge-Kutta oracle could not make progress.
class StepUnderflowError : public Error {
 public:
  StepUnderflowError(const std::string& what, double location) : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace aimlinsys
