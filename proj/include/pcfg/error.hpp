#pragma once

#include <stdexcept>
#include <string>

namespace pcfg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model: unknown names, bad arities, non-total tables.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent query (unknown names, overlapping do-targets,
/// evidence and intervention on the same variable).
class QueryError : public Error {
 public:
  using Error::Error;
};

/// The conditioning event has probability zero.
class InconsistentEvidence : public Error {
 public:
  using Error::Error;
};

/// A ground-size or state-space limit was exceeded.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// An operator was applied outside its precondition (e.g. a lifted sum-out
/// on a parfactor that still has logvars the eliminated atom does not cover).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcfg
