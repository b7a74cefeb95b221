#pragma once

#include <stdexcept>
#include <string>

namespace archdyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: out-of-range indices, invalid genus, non-admissible words.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured cap (words enumerated, matrix size).
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

/// An operator would leave the truncated weight window of a model.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole, eigenvalue collision, or a non-loxodromic element.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or inconsistent configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace archdyn
