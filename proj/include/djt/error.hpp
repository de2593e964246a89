#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace djt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a 0-based byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An operation received arguments living on different charts.
class ChartMismatch : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (zero divisor, pole, singular matrix, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace djt
