#pragma once

#include <stdexcept>
#include <string>

namespace wellspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented validity window of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at (or within 1e-12 of) a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A series or iteration exceeded its term budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A required physical scale is absent or violates its invariant.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A closed-form Green function was requested too close to one of its poles.
/// `level_index` is the nearest eigenvalue index when it is known (-1 otherwise).
class NearPoleError : public Error {
public:
    NearPoleError(const std::string& what, int level_index = -1, const char* parity = nullptr)
        : Error(what), level_index_(level_index), parity_(parity ? parity : "") {}

    [[nodiscard]] int level_index() const noexcept { return level_index_; }
    /// "even", "odd" or empty.
    [[nodiscard]] const std::string& parity() const noexcept { return parity_; }

private:
    int level_index_;
    std::string parity_;
};

/// Finite-difference solve requested at an energy closer than 1e-6 to a matrix eigenvalue.
class NearEigenvalueError : public Error {
public:
    using Error::Error;
};

/// Dirichlet walls placed where the potential is still too low for the requested energies.
class WallTooCloseError : public Error {
public:
    using Error::Error;
};

/// A characteristic function returned a non-finite value inside a scan window.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace wellspec
