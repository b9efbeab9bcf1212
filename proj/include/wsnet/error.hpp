#pragma once

#include <stdexcept>
#include <string>

namespace wsnet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document (JSON, XML, CSV, edge list).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but violates a contract (duplicate ids, unknown nodes, bad ranges).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Semantic matching was requested on a parameter that carries no concept.
class AnnotationMissingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A statistic is mathematically undefined on the given input (zero variance, no length-2 path, ...).
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace wsnet
