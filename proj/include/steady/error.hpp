#pragma once

#include <stdexcept>
#include <string>

namespace steady {

enum class ErrorKind { Config, Numerical, Domain, Ingest };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class IngestError : public Error {
 public:
  explicit IngestError(const std::string& what) : Error(ErrorKind::Ingest, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : NumericalError(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace steady
