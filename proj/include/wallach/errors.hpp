#pragma once

#include <stdexcept>
#include <string>

namespace wallach {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live in different algebra contexts.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix that should lie in the algebra does not re-expand in its basis.
class NotInAlgebra : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad JSON, dependent basis, inconsistent index sets.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class DegenerateSpace : public Error {
 public:
  using Error::Error;
};

class UnknownSpace : public Error {
 public:
  using Error::Error;
};

class SelectorUndefined : public Error {
 public:
  using Error::Error;
};

/// A catalog construction failed its own structural verification.
class StructureError : public Error {
 public:
  using Error::Error;
};

class GroupingInvalid : public Error {
 public:
  using Error::Error;
};

class WrongModule : public Error {
 public:
  using Error::Error;
};

class InvalidMetric : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

class OutOfChart : public Error {
 public:
  using Error::Error;
};

}  // namespace wallach
