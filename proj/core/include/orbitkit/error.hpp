#pragma once

#include <stdexcept>
#include <string>

namespace orbitkit {

// Raised when inputs violate a module precondition or a computation has no
// physical solution (no circular orbit, unbound state, supercritical b...).
// `kind` is a stable snake_case identifier suitable for machine consumption.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Numerical machinery failed (step-size underflow, bracket exhausted).
class NumericalError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace orbitkit
