#pragma once

#include <stdexcept>
#include <string>

namespace descsys {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class IrregularPencil : public Error {
 public:
  using Error::Error;
};

class NotNilpotent : public Error {
 public:
  using Error::Error;
};

class BadHorizon : public Error {
 public:
  using Error::Error;
};

class NotReachable : public Error {
 public:
  using Error::Error;
};

class NotAchievable : public Error {
 public:
  using Error::Error;
};

class MissingData : public Error {
 public:
  using Error::Error;
};

// Raised when a computed result fails its own exact self-check. Indicates a
// bug in the library, never a property of the input.
class InternalVerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace descsys
