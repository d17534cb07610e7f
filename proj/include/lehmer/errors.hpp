#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lehmer {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was applied outside its mathematical domain
/// (zero polynomial content, reducible input where irreducible is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole of a rational function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A configured size bound (degree cap, search budget, supported shape) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its target accuracy.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace lehmer
