#pragma once

#include <stdexcept>
#include <string>

namespace menages {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two polynomials with different variable tags were combined.
class VariableMismatch : public Error {
 public:
  using Error::Error;
};

/// A size limit (permanent side, profile-DP window) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input: non-square matrix, bad set syntax, degree too large, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Too few terms to run a guesser with the requested budget.
class InsufficientTerms : public Error {
 public:
  using Error::Error;
};

/// The leading coefficient of a holonomic recurrence vanished while extending.
class SingularRecurrence : public Error {
 public:
  SingularRecurrence(const std::string& what, long index)
      : Error(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// Extension produced a non-integer term: the recurrence is wrong for the data.
class NonIntegralExtension : public Error {
 public:
  NonIntegralExtension(const std::string& what, long index)
      : Error(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

}  // namespace menages
