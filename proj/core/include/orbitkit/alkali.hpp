#pragma once

namespace orbitkit {

/// Closed-form orbit of the alkali potential -1/r - lambda/r^2:
///
///   u(theta) = 1/(L^2 k^2) [1 + sqrt(1 + 2 E L^2 k^2) cos k(theta - theta0)],
///   k^2 = 1 - 2 lambda / L^2.
///
/// With lambda = 0 this is the Kepler conic.
class AlkaliOrbit {
public:
    AlkaliOrbit(double E, double L, double lambda, double theta0 = 0.0);

    double operator()(double theta) const;  // u = 1/r
    double radial_momentum(double theta) const;  // p_r = -L du/dtheta

    double kappa() const noexcept { return kappa_; }
    /// sqrt(1 + 2 E L^2 kappa^2); zero for circular orbits.
    double amplitude() const noexcept { return amplitude_; }
    double semi_latus_rectum() const noexcept { return L_ * L_ * kappa_ * kappa_; }
    double pericenter_theta() const noexcept { return theta0_; }

private:
    double L_;
    double theta0_;
    double kappa_;
    double amplitude_;
};

inline AlkaliOrbit analytic_alkali_orbit(double E, double L, double lambda, double theta0 = 0.0) {
    return {E, L, lambda, theta0};
}

}  // namespace orbitkit
