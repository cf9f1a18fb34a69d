#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller violated an interface precondition (mismatched grids, missing data).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested allocation exceeds the configured budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate) {}

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

/// Non-finite value produced while time stepping.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace nmc
