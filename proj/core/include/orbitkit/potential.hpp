#pragma once

#include <utility>

namespace orbitkit {

/// Central potential V(r) = a r^nu + b / r^2 in units with mu = hbar = e = 1.
///
/// The power-law part W(r) = a r^nu carries the dynamics that decide orbit
/// closure; the inverse-square part only rescales the angular motion.
/// Construction rejects the degenerate cases a = 0 and nu = 0.
class CombinedPotential {
public:
    CombinedPotential(double a, double nu, double b);

    /// Alkali-atom valence potential -1/r - lambda/r^2.
    static CombinedPotential alkali(double lambda) { return {-1.0, -1.0, -lambda}; }

    double a() const noexcept { return a_; }
    double nu() const noexcept { return nu_; }
    double b() const noexcept { return b_; }

    double power_law(double r) const;          // W(r)
    double value(double r) const;              // V(r)
    double force(double r) const;              // f(r) = -dV/dr
    double force_derivative(double r) const;   // f'(r)
    double power_law_force(double r) const;    // g(r) = -dW/dr
    double effective(double r, double L) const;  // V + L^2 / 2r^2

    /// a nu (nu + 2) > 0, excluding nu < -2 with a > 0 (no bounded motion).
    bool admits_stable_circular_orbits() const noexcept;

    bool is_coulomb_like() const noexcept { return nu_ == -1.0 && a_ < 0.0; }
    bool is_harmonic_like() const noexcept { return nu_ == 2.0 && a_ > 0.0; }

    /// Limit of W(r) as r -> infinity (0 for nu < 0, +inf for attractive nu > 0).
    double asymptotic_power_law() const noexcept;

    /// Throws DomainError unless admits_stable_circular_orbits().
    void require_stable() const;

private:
    double a_;
    double nu_;
    double b_;
};

struct PotentialSample {
    double V;
    double f;
    double U_eff;
};

PotentialSample evaluate(const CombinedPotential& potential, double r, double L = 0.0);

struct CircularOrbit {
    double r0;
    double E;
    double L;
    bool stable;
};

struct RootScan {
    double r_lo = 1e-6;
    double r_hi = 1e6;
    int points = 2000;
};

/// Circular orbit of angular momentum L: root of f(r) + L^2/r^3 located on a
/// geometric scan and polished by bisection.
CircularOrbit circular_orbit(const CombinedPotential& potential, double L, const RootScan& scan = {});

struct ShapeIndicators {
    double beta_sq;
    double kappa;
    double beta_kappa;
};

ShapeIndicators shape_indicators(const CombinedPotential& potential, double L);

/// L = sqrt(2b / (kappa^2 - 1)).
double angular_momentum_for_kappa(const CombinedPotential& potential, double kappa);

/// Radial turning points (pericenter, apocenter) of a bound orbit with
/// energy E and angular momentum L. Throws DomainError("not_bound") when the
/// motion at (E, L) is unbounded.
std::pair<double, double> turning_points(const CombinedPotential& potential, double L, double E);

}  // namespace orbitkit
