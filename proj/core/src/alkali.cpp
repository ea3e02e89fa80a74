#include "orbitkit/alkali.hpp"

#include <cmath>
#include <sstream>

#include "orbitkit/error.hpp"

namespace orbitkit {

AlkaliOrbit::AlkaliOrbit(double E, double L, double lambda, double theta0) : L_(L), theta0_(theta0) {
    if (!(L > 0.0)) throw DomainError("domain", "angular momentum must be positive");
    const double kappa_sq = 1.0 - 2.0 * lambda / (L * L);
    if (kappa_sq <= 0.0) {
        std::ostringstream msg;
        msg << "supercritical: kappa^2 = 1 - 2 lambda/L^2 = " << kappa_sq << " <= 0";
        throw DomainError("supercritical", msg.str());
    }
    kappa_ = std::sqrt(kappa_sq);
    const double disc = 1.0 + 2.0 * E * L * L * kappa_sq;
    if (disc < 0.0) {
        std::ostringstream msg;
        msg << "no real orbit: 1 + 2 E L^2 kappa^2 = " << disc << " < 0";
        throw DomainError("no_real_orbit", msg.str());
    }
    amplitude_ = std::sqrt(disc);
}

double AlkaliOrbit::operator()(double theta) const {
    return (1.0 + amplitude_ * std::cos(kappa_ * (theta - theta0_))) / semi_latus_rectum();
}

double AlkaliOrbit::radial_momentum(double theta) const {
    return L_ * amplitude_ * kappa_ * std::sin(kappa_ * (theta - theta0_)) / semi_latus_rectum();
}

}  // namespace orbitkit
