#pragma once

#include <stdexcept>
#include <string>

namespace kwb {

enum class ErrorKind {
  invalid_argument,
  domain_violation,
  contraction_violation,
  condition4_violation,
  validation,
  io,
};

/// Base for every error the library throws. `kind()` lets callers map
/// failures to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainViolation : public Error {
 public:
  explicit DomainViolation(const std::string& msg) : Error(ErrorKind::domain_violation, msg) {}
};

/// gamma(beta, K1, K2) >= 1: the fixed-step recursion no longer contracts.
class ContractionViolation : public Error {
 public:
  explicit ContractionViolation(const std::string& msg)
      : Error(ErrorKind::contraction_violation, msg) {}
};

/// Mean-value offset epsilon not below c^2.
class Condition4Violation : public Error {
 public:
  explicit Condition4Violation(const std::string& msg)
      : Error(ErrorKind::condition4_violation, msg) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(ErrorKind::invalid_argument, msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(ErrorKind::io, msg) {}
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

}  // namespace kwb
