#pragma once

#include <stdexcept>
#include <string>

namespace absconic {

/// Base of all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (documents, numbers, CLI values).
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A precondition of an operation does not hold (dimension mismatch,
/// zero input, degree too small, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Degenerate geometric configuration (collinear points, singular conic,
/// rank-deficient linear system, ...).
class DegenerateError : public Error {
  public:
    using Error::Error;
};

/// An algorithm ran to completion but its answer is not usable, e.g. a
/// symmetry search that finds no or several reflections.
class AlgorithmError : public Error {
  public:
    using Error::Error;
};

}  // namespace absconic
