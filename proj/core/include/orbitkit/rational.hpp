#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace orbitkit {

/// q/p with p > 0, written numerator-first as in "beta kappa = q/p".
struct Rational {
    std::int64_t q = 0;
    std::int64_t p = 1;

    double value() const noexcept { return static_cast<double>(q) / static_cast<double>(p); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Continued-fraction convergents of x with denominators <= max_denominator.
std::vector<Rational> convergents(double x, std::int64_t max_denominator);

/// Smallest-denominator convergent of x lying within tol of x, if any.
std::optional<Rational> rational_within(double x, double tol, std::int64_t max_denominator);

}  // namespace orbitkit
