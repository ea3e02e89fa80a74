#include "orbitkit/rational.hpp"

#include <cmath>

#include "orbitkit/error.hpp"

namespace orbitkit {

std::vector<Rational> convergents(double x, std::int64_t max_denominator) {
    if (!std::isfinite(x)) throw DomainError("domain", "cannot expand a non-finite value");
    if (max_denominator < 1) throw DomainError("domain", "max_denominator must be >= 1");

    std::vector<Rational> out;
    // h_{k} = a_k h_{k-1} + h_{k-2}, same for k_{k}.
    std::int64_t h_prev = 1, h_prev2 = 0;
    std::int64_t k_prev = 0, k_prev2 = 1;
    double rest = x;
    for (int depth = 0; depth < 64; ++depth) {
        const double a = std::floor(rest);
        if (std::abs(a) > 9.0e15) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t h = ai * h_prev + h_prev2;
        const std::int64_t k = ai * k_prev + k_prev2;
        if (k > max_denominator) break;
        out.push_back({h, k});
        const double frac = rest - a;
        if (frac < 1e-15) break;
        rest = 1.0 / frac;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return out;
}

std::optional<Rational> rational_within(double x, double tol, std::int64_t max_denominator) {
    for (const Rational& c : convergents(x, max_denominator)) {
        if (std::abs(x - c.value()) < tol) return c;
    }
    return std::nullopt;
}

}  // namespace orbitkit
