#pragma once

#include <stdexcept>
#include <string>

namespace dlf {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Evaluation requested at (or numerically indistinguishable from) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

// An asymptotic or iterative method could not certify the requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// A structural precondition was violated (bad modulus, bad interval, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A consistency certificate failed (zero counts disagree, winding number
// not an integer, sign-change bracket lost, ...).
class CertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlf
