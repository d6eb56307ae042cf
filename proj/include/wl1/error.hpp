#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wl1 {

// Base of every error raised by the library. The CLI maps IoError to exit
// code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: bad dimensions, infeasible cardinalities, etc.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A closed-form expression was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Rank deficiency, or a weighted problem whose minimum is not attained.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// A configured size or work budget would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IterationLimitError : public Error {
 public:
  using Error::Error;
};

// y lies outside the range of A.
class RecoveryInfeasibleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace wl1
