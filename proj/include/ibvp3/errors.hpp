#pragma once

#include <stdexcept>
#include <string>

namespace ibvp3 {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed problem document (bad syntax, missing fields, bad values).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Structurally well-formed input that violates a model invariant
/// (rank-deficient boundary matrix, mixed-order row, non-real coupling, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Numerical machinery failure (non-integer winding count, Newton
/// non-convergence, unresolvable near-singular contour).
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

} // namespace ibvp3
