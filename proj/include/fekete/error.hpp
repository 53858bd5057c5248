#pragma once

#include <stdexcept>
#include <string>

namespace fekete {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text, JSON, CSV or number literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition (horizon too small,
/// parameter out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A construction ran but could not produce its object inside the allowed
/// horizon ("horizon exhausted", "f identically zero").
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fekete
