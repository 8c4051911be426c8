#pragma once

#include <stdexcept>
#include <string>

namespace ncimax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (programming error).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A counterexample functional could not produce a verdict for some set.
/// Raised when its own precondition (e.g. f·g = 1) silently failed.
class ContractUnmet : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// Malformed ring descriptor, element, or polynomial text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input rejected before running: bad inverse pair, i = 0, and so on.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The queried set is a proper prime ideal that misses the target, so the
/// target is not nilpotent.
class NotInAllPrimes : public Error {
 public:
  using Error::Error;
};

/// The engine performed its iteration budget without terminating.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A result that is impossible for correct code was observed.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

/// An oracle was asked to enumerate a ring above its configured size bound.
class SizeBoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ncimax
