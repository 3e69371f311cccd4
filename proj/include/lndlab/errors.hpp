#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lndlab {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or derivation text. `position()` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'") {}
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands belong to different ring contexts") {}
};

/// An operation's precondition does not hold for the given input.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace lndlab
