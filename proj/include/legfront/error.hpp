#pragma once

#include <stdexcept>
#include <string>

namespace legfront {

// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition or domain violation (bad parameter, wrong chart class, ...).
struct DomainError : Error {
  using Error::Error;
};

// Shape mismatch between a point/tangent and its model.
struct DimensionError : DomainError {
  using DomainError::DomainError;
};

// Malformed input document.
struct SchemaError : Error {
  using Error::Error;
};

// File could not be read or written.
struct IoError : Error {
  using Error::Error;
};

// A move was requested at a site that does not carry the move's pattern.
struct PatternError : DomainError {
  using DomainError::DomainError;
};

// Exhaustive search would exceed its budget.
struct BudgetError : DomainError {
  using DomainError::DomainError;
};

}  // namespace legfront
