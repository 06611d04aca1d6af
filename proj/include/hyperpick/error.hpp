#pragma once

#include <stdexcept>
#include <string>

namespace hyperpick {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a type invariant (point outside the disc, bad lengths...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Two nodes coincide, so brackets between them vanish.
class DegenerateNodes : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Boundary samples of an outer function are not positive after clipping.
class InvalidBoundaryData : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// |f(z)| reached 1, so the hyperbolic derivative has no finite value.
class DegenerateBoundary : public Error {
 public:
  using Error::Error;
};

/// Extrapolation of a diagonal quotient did not settle.
class LimitDivergence : public Error {
 public:
  using Error::Error;
};

/// A node sits on a zero of the Blaschke factor used as denominator.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The data admit no strict solution; the caller asked for one anyway.
class Refusal : public Error {
 public:
  Refusal(const std::string& what, std::string verdict)
      : Error(what), verdict_(std::move(verdict)) {}
  const std::string& verdict() const noexcept { return verdict_; }

 private:
  std::string verdict_;
};

}  // namespace hyperpick
