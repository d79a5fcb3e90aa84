// SPDX-License-Identifier: MIT
/**
 * @file error.hpp
 * @brief Exception hierarchy shared by all modules
 *
 * Two broad kinds are distinguished so that front ends can map them to exit
 * codes: validation failures (bad inputs, violated preconditions) and
 * numerical failures (a computation that was well posed but did not finish).
 */

#pragma once

#include <stdexcept>
#include <string>

namespace rapm {

enum class ErrorKind { validation, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what)
        : Error(ErrorKind::validation, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what)
        : Error(ErrorKind::numerical, what) {}
};

/// Evaluation point outside the support of a surface or curve.
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A tracked root branch ceased to exist (or jumped) at `location`.
class BranchTerminated : public NumericalError {
public:
    BranchTerminated(const std::string& what, double location)
        : NumericalError(what), location_(location) {}

    [[nodiscard]] double location() const noexcept { return location_; }

private:
    double location_;
};

/// S*u_SS reached (3/(4 mu))^3 during a solve.
class ParabolicityLost : public NumericalError {
public:
    ParabolicityLost(const std::string& what, double S, double t)
        : NumericalError(what), S_(S), t_(t) {}

    [[nodiscard]] double S() const noexcept { return S_; }
    [[nodiscard]] double t() const noexcept { return t_; }

private:
    double S_;
    double t_;
};

}  // namespace rapm
