#pragma once

#include <stdexcept>
#include <string>

namespace quarkonia {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation (r <= 0, non-positive mass, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed user input: bad JSON, empty observation list, degenerate bracket.
class InputError : public Error {
public:
  using Error::Error;
};

class UnsupportedSpecError : public Error {
public:
  using Error::Error;
};

/// The requested bound state does not exist. `what()` names the reason.
class NoBoundStateError : public Error {
public:
  using Error::Error;
};

/// Attractive inverse-square term too strong (1 + 4A < 0): the spectrum is not bounded below.
class FallToCenterError : public NoBoundStateError {
public:
  using NoBoundStateError::NoBoundStateError;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

class SingularInputError : public Error {
public:
  using Error::Error;
};

class InfeasibleStartError : public Error {
public:
  using Error::Error;
};

}  // namespace quarkonia
