#include "orbitkit/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "detail/roots.hpp"
#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

void require_positive_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        std::ostringstream msg;
        msg << "radius must be positive and finite, got r = " << r;
        throw DomainError("domain", msg.str());
    }
}

}  // namespace

CombinedPotential::CombinedPotential(double a, double nu, double b) : a_(a), nu_(nu), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(nu) || !std::isfinite(b))
        throw DomainError("domain", "potential parameters must be finite");
    if (a == 0.0)
        throw DomainError("degenerate_potential", "a = 0 leaves a pure inverse-square potential");
    if (nu == 0.0)
        throw DomainError("degenerate_potential", "nu = 0 makes the power-law part a constant with no force");
}

double CombinedPotential::power_law(double r) const {
    require_positive_radius(r);
    return a_ * std::pow(r, nu_);
}

double CombinedPotential::value(double r) const {
    require_positive_radius(r);
    return a_ * std::pow(r, nu_) + b_ / (r * r);
}

double CombinedPotential::power_law_force(double r) const {
    require_positive_radius(r);
    return -a_ * nu_ * std::pow(r, nu_ - 1.0);
}

double CombinedPotential::force(double r) const {
    require_positive_radius(r);
    return -a_ * nu_ * std::pow(r, nu_ - 1.0) + 2.0 * b_ / (r * r * r);
}

double CombinedPotential::force_derivative(double r) const {
    require_positive_radius(r);
    const double r2 = r * r;
    return -a_ * nu_ * (nu_ - 1.0) * std::pow(r, nu_ - 2.0) - 6.0 * b_ / (r2 * r2);
}

double CombinedPotential::effective(double r, double L) const {
    return value(r) + L * L / (2.0 * r * r);
}

bool CombinedPotential::admits_stable_circular_orbits() const noexcept {
    if (a_ > 0.0 && nu_ < -2.0) return false;
    return a_ * nu_ * (nu_ + 2.0) > 0.0;
}

double CombinedPotential::asymptotic_power_law() const noexcept {
    if (nu_ < 0.0) return 0.0;
    return a_ > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

void CombinedPotential::require_stable() const {
    if (!admits_stable_circular_orbits()) {
        std::ostringstream msg;
        msg << "potential (a=" << a_ << ", nu=" << nu_ << ") violates a*nu*(nu+2) > 0 "
            << "(or has nu < -2 with a > 0); no stable bound orbits";
        throw DomainError("unstable_potential", msg.str());
    }
}

PotentialSample evaluate(const CombinedPotential& potential, double r, double L) {
    const double V = potential.value(r);
    return {V, potential.force(r), V + L * L / (2.0 * r * r)};
}

CircularOrbit circular_orbit(const CombinedPotential& potential, double L, const RootScan& scan) {
    if (!(L > 0.0)) throw DomainError("domain", "angular momentum must be positive");
    const double L2 = L * L;
    if (L2 + 2.0 * potential.b() <= 0.0 && potential.nu() > -2.0)
        throw DomainError("fall_to_center",
                          "L^2 + 2b <= 0: attractive inverse-square term dominates, particle falls to the center");

    auto residual = [&](double r) { return potential.force(r) + L2 / (r * r * r); };

    const double ratio = std::pow(scan.r_hi / scan.r_lo, 1.0 / (scan.points - 1));
    double r_prev = scan.r_lo;
    double h_prev = residual(r_prev);
    for (int i = 1; i < scan.points; ++i) {
        const double r = (i == scan.points - 1) ? scan.r_hi : r_prev * ratio;
        const double h = residual(r);
        if (h == 0.0 || (h < 0.0) != (h_prev < 0.0)) {
            const double r0 = (h == 0.0) ? r : detail::bisect(residual, r_prev, r);
            const double f0 = potential.force(r0);
            const bool stable = -potential.force_derivative(r0) - 3.0 * f0 / r0 > 0.0;
            return {r0, L2 / (2.0 * r0 * r0) + potential.value(r0), L, stable};
        }
        r_prev = r;
        h_prev = h;
    }
    std::ostringstream msg;
    msg << "no circular orbit: f(r) + L^2/r^3 has no sign change on [" << scan.r_lo << ", " << scan.r_hi << "]";
    throw DomainError("no_circular_orbit", msg.str());
}

ShapeIndicators shape_indicators(const CombinedPotential& potential, double L) {
    if (!(L > 0.0)) throw DomainError("domain", "angular momentum must be positive");
    const double beta_sq = potential.nu() + 2.0;
    if (beta_sq <= 0.0) throw DomainError("unstable_family", "nu + 2 <= 0: beta is imaginary");
    const double radicand = 1.0 + 2.0 * potential.b() / (L * L);
    if (radicand <= 0.0) throw DomainError("supercritical", "1 + 2b/L^2 <= 0: supercritical inverse-square term");
    const double kappa = std::sqrt(radicand);
    return {beta_sq, kappa, std::sqrt(beta_sq) * kappa};
}

double angular_momentum_for_kappa(const CombinedPotential& potential, double kappa) {
    if (!(kappa > 0.0)) throw DomainError("domain", "kappa must be positive");
    const double denom = kappa * kappa - 1.0;
    const double ratio = denom == 0.0 ? 0.0 : 2.0 * potential.b() / denom;
    if (!(ratio > 0.0)) {
        std::ostringstream msg;
        msg << "no real L: 2b/(kappa^2-1) must be positive (b=" << potential.b() << ", kappa=" << kappa << ")";
        throw DomainError("no_real_L", msg.str());
    }
    return std::sqrt(ratio);
}

std::pair<double, double> turning_points(const CombinedPotential& potential, double L, double E) {
    const CircularOrbit circ = circular_orbit(potential, L);
    if (!circ.stable) throw DomainError("not_bound", "circular orbit at this L is unstable; no bound oscillation");
    auto excess = [&](double r) { return potential.effective(r, L) - E; };
    const double depth = excess(circ.r0);
    if (depth > 0.0) {
        std::ostringstream msg;
        msg << "energy " << E << " lies below the effective-potential minimum " << circ.E;
        throw DomainError("not_bound", msg.str());
    }
    if (depth >= -1e-14 * std::max(1.0, std::abs(E))) return {circ.r0, circ.r0};

    double inner = circ.r0;
    while (excess(inner) < 0.0) {
        inner *= 0.5;
        if (inner < 1e-14 * circ.r0) throw DomainError("fall_to_center", "no inner turning point");
    }
    double outer = circ.r0;
    while (excess(outer) < 0.0) {
        outer *= 2.0;
        if (outer > 1e10 * circ.r0) {
            std::ostringstream msg;
            msg << "motion at E=" << E << ", L=" << L << " is not bound (no outer turning point)";
            throw DomainError("not_bound", msg.str());
        }
    }
    const double r_min = detail::bisect(excess, inner, circ.r0);
    const double r_max = detail::bisect(excess, circ.r0, outer);
    return {r_min, r_max};
}

}  // namespace orbitkit
