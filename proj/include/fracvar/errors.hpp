#pragma once

#include <stdexcept>
#include <string>

namespace fracvar {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid grid parameters (a >= b, n < 2, ...).
class GridError : public Error {
public:
    using Error::Error;
};

// Mismatched grids or wrong-length value vectors.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Numeric argument outside the admissible domain (gamma at x <= 0,
// fractional order outside (0, 1], non-positive solver options, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A fixed end-point condition is violated beyond projection tolerance.
class ConstraintError : public Error {
public:
    using Error::Error;
};

// A Lagrangian evaluation produced a non-finite value; carries the node
// index when the failure is tied to a grid node (-1 otherwise).
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& msg, int node = -1)
        : Error(msg), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

// Unknown built-in problem name.
class RegistryError : public Error {
public:
    using Error::Error;
};

// Missing or inconsistent configuration parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

// An operation was called in a state its contract forbids (e.g. a natural
// boundary residual on a Fixed end).
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace fracvar
