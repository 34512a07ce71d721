#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kframe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or module spaces do not fit together.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
};

/// A positive operator was required and the input has a negative eigenvalue
/// beyond tolerance.
class NotPositive : public Error {
 public:
  using Error::Error;
};

class NotAFrame : public Error {
 public:
  using Error::Error;
};

class NotAtomic : public Error {
 public:
  using Error::Error;
};

/// A named hypothesis of a construction failed. `hypothesis()` identifies it.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string hypothesis, const std::string& what)
      : Error(what), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// A certificate the library computed for itself did not verify.
class InternalViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace kframe
