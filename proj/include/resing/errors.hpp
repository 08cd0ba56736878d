#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resing {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or fan text. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariableError : public ParseError {
 public:
  UnknownVariableError(const std::string& name, std::size_t position)
      : ParseError("unknown variable '" + name + "'", position), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A precondition of an operation does not hold (wrong ring, zero input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A resolution invariant that must hold by construction was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace resing
