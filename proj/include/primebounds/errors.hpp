#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace primebounds {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (li at 1, li of a negative number).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of a bound or routine is violated.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Result not representable at the current exponent range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Query outside the data that was loaded or built (zeros, prime tables).
class CoverageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace primebounds
