#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvekit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed curve text. position() is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t position)
      : ParseError("unknown function '" + name + "'", position), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// Singular or otherwise undefined evaluation (division by zero, tan pole, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

class UnboundParameter : public EvalError {
 public:
  explicit UnboundParameter(const std::string& name)
      : EvalError("unbound parameter '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NotDifferentiable : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The input is mathematically degenerate: identical curves, a non-regular
// parameterization, and the like.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvekit
