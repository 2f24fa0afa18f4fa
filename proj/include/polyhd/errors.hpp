#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyhd {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (polynomial grammar, JSON documents).
struct InputError : Error {
    using Error::Error;
};

struct ParseError : InputError {
    std::size_t column;  // 1-based
    ParseError(const std::string& msg, std::size_t col)
        : InputError(msg + " (column " + std::to_string(col) + ")"), column(col) {}
};

struct UnknownVariable : InputError {
    std::string name;
    std::size_t column;  // 1-based
    UnknownVariable(std::string var, std::size_t col)
        : InputError("unknown variable '" + var + "' (column " + std::to_string(col) + ")"),
          name(std::move(var)),
          column(col) {}
};

/// Well-formed input for which an operation's precondition does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

struct RingMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct VariableMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DimensionMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct ArityMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct MissingAssignment : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct OverflowError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NonInvertibleDenominator : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotAUnit : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotAUnitDeterminant : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NonSquareMatrix : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct SingularLinearPart : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct BoundExceeded : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Composition verification failed: the map is not (provably) an automorphism.
/// `component` is 1-based; `residual_text` is the offending composed component.
/// Over Z/m the degree bound used for the candidate is not field-backed, so the
/// verdict is only "inconclusive at this bound" and `inconclusive_bound` is set.
struct NotAnAutomorphism : Error {
    std::size_t component;
    std::string residual_text;
    bool inconclusive_bound;
    NotAnAutomorphism(std::size_t comp, std::string residual, bool inconclusive,
                      const std::string& msg)
        : Error(msg),
          component(comp),
          residual_text(std::move(residual)),
          inconclusive_bound(inconclusive) {}
};

}  // namespace polyhd
