#include "orbitkit/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace orbitkit {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

}  // namespace

double gamma_fn(double x) {
    if (std::isnan(x)) return x;
    if (x <= 0.0 && x == std::floor(x)) return std::numeric_limits<double>::quiet_NaN();
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    double sum = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i) sum += lanczos_coef[i] / (z + static_cast<double>(i));
    const double t = z + lanczos_g + 0.5;
    // sqrt(2 pi) t^(z + 1/2) e^-t sum, split to delay overflow
    const double half_power = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * sum;
}

}  // namespace orbitkit
