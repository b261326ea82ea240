#pragma once

#include <stdexcept>
#include <string>

namespace schlogl {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy answer.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The zero eigenspace is not one-dimensional.
class AmbiguityError : public SolverError {
public:
    using SolverError::SolverError;
};

}  // namespace schlogl

namespace schlogl {

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace schlogl
