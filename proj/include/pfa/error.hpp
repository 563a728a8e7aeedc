#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text: terms, equations, formulas.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Input data that violates a format or a structural invariant.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A term cannot be evaluated: unbound variable, symbol outside the signature,
/// operands on different bases.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// The input algebra provably has no representation of the requested kind, or
/// one of the construction's theory-guaranteed assertions failed on it.
class NotRepresentable : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pfa
