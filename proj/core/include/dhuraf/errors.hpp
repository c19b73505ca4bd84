#pragma once

#include <stdexcept>
#include <string>

namespace dhuraf {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (bad JSON, bad CSV). Carries a position where known.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally well-formed input that violates the document rules
/// (unknown keys, out-of-range levels, duplicate ids).
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// A named path (section/item, evidence id) does not resolve.
class UnknownPathError : public Error {
 public:
  using Error::Error;
};

/// An id collides with one already in the ledger.
class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

/// Classification requested but no section has any known score.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace dhuraf
