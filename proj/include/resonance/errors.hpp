#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

/// Base class for all computational errors raised by this library.
/// The CLI maps any Error to exit code 1; usage problems exit with 2.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside an operation's admissible domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// An iterative scheme could not reach the requested tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// A root-finding bracket contained no sign change.
class BracketingError : public Error {
public:
  using Error::Error;
};

/// A size or memory guard was exceeded.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Malformed input file; the message carries the offending line number.
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace resonance
