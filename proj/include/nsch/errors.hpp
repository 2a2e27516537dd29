#pragma once

#include <stdexcept>
#include <string>

namespace nsch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (non-finite samples, mismatched grids).
class DataError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Scalar argument outside the domain of a function (e.g. Phi at |s| > 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The potential was evaluated at (or past) one of its singular values +-1.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid configuration or parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Binary/text file format problem.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsch
