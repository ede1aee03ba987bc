#pragma once

#include <stdexcept>
#include <string>

namespace prism {

/// Base for every error the library raises. Messages are single-line so the
/// CLI can print them verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad flags, dimensions or detector parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Unreadable files, truncated streams, undecodable images.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A JSON document is missing a field or has the wrong type.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that breaks a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace prism
