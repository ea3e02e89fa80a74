#include "orbitkit/closure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "detail/parallel.hpp"
#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double no_time_limit = 1e12;

OrbitTrajectory integrate_to_pericenters(const CombinedPotential& potential, const OrbitState& start,
                                         std::size_t count, double tol) {
    IntegrationOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    opt.record_states = false;
    opt.max_pericenters = count;
    return integrate_orbit(potential, start, no_time_limit, opt);
}

}  // namespace

ApsidalAngle apsidal_angle(const OrbitTrajectory& traj) {
    const auto& peri = traj.pericenters;
    if (peri.size() < 3) {
        std::ostringstream msg;
        msg << "insufficient radial oscillations: " << peri.size() << " pericenters recorded, need 3";
        throw DomainError("insufficient_oscillations", msg.str());
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 1; i < peri.size(); ++i) {
        const double d = peri[i].theta - peri[i - 1].theta;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    const std::size_t n = peri.size() - 1;
    return {(peri.back().theta - peri.front().theta) / static_cast<double>(n), hi - lo, n};
}

double phase_gap(const OrbitState& a, const OrbitState& b) {
    const double dr = (b.r - a.r) / a.r;
    const double dp = (b.p_r - a.p_r) * a.r / a.L;
    return std::hypot(dr, dp);
}

ClosureReport closure_analysis(const CombinedPotential& potential, double L, double E,
                               const ClosureOptions& options) {
    potential.require_stable();
    const ShapeIndicators shape = shape_indicators(potential, L);
    const auto [r_min, r_max] = turning_points(potential, L, E);

    ClosureReport report;
    report.kappa = shape.kappa;
    report.beta = std::sqrt(shape.beta_sq);
    report.beta_kappa = shape.beta_kappa;

    OrbitState start;
    start.r = r_min;
    start.L = L;

    if (r_max - r_min <= 1e-9 * r_min) {
        // Circular: no pericenters to measure, the small-oscillation ratio applies.
        report.frequency_ratio = shape.beta_kappa;
    } else {
        const OrbitTrajectory probe =
            integrate_to_pericenters(potential, start, options.pericenters, options.integration_tol);
        report.frequency_ratio = two_pi / apsidal_angle(probe).mean;
    }

    report.rational = rational_within(report.frequency_ratio, options.tol_rational, options.max_denominator);
    if (!report.rational) return report;

    const std::int64_t p = report.rational->p;
    report.period_revolutions = p;

    IntegrationOptions opt;
    opt.rtol = options.integration_tol;
    opt.atol = options.integration_tol * 1e-2;
    opt.record_states = false;
    opt.theta_end = two_pi * static_cast<double>(p);
    const OrbitTrajectory full = integrate_orbit(potential, start, no_time_limit, opt);
    const OrbitState& end = full.final_state;
    report.numeric_gap = phase_gap(start, end);
    report.closed = *report.numeric_gap < options.gap_tol;
    return report;
}

std::vector<double> BertrandScan::closed_exponents() const {
    std::vector<double> out;
    for (const auto& v : verdicts)
        if (v.closed_for_all) out.push_back(v.nu);
    return out;
}

std::pair<double, double> orbit_for_eccentricity(const CombinedPotential& potential, double r_pericenter,
                                                 double eccentricity) {
    if (!(eccentricity > 0.0 && eccentricity < 1.0))
        throw DomainError("domain", "eccentricity must lie in (0, 1)");
    const double r1 = r_pericenter;
    const double r2 = r1 * (1.0 + eccentricity) / (1.0 - eccentricity);
    // Equal effective potential at both apsides fixes L.
    const double L2 = 2.0 * (potential.power_law(r2) - potential.power_law(r1)) / (1.0 / (r1 * r1) - 1.0 / (r2 * r2)) -
                      2.0 * potential.b();
    if (!(L2 > 0.0)) {
        std::ostringstream msg;
        msg << "no real angular momentum realizes eccentricity " << eccentricity << " for nu=" << potential.nu();
        throw DomainError("no_real_L", msg.str());
    }
    const double L = std::sqrt(L2);
    return {L, potential.effective(r1, L)};
}

BertrandScan bertrand_scan(std::span<const double> nu_values, std::span<const double> eccentricities, double b,
                           const ScanOptions& options) {
    BertrandScan scan;
    const std::size_t n_ecc = eccentricities.size();
    scan.samples.resize(nu_values.size() * n_ecc);

    for (double nu : nu_values) {
        const CombinedPotential pot(nu > 0.0 ? options.a_magnitude : -options.a_magnitude, nu, b);
        pot.require_stable();
    }

    detail::parallel_for(scan.samples.size(), options.threads, [&](std::size_t idx) {
        const double nu = nu_values[idx / n_ecc];
        const double ecc = eccentricities[idx % n_ecc];
        const CombinedPotential pot(nu > 0.0 ? options.a_magnitude : -options.a_magnitude, nu, b);
        const auto [L, E] = orbit_for_eccentricity(pot, options.r_pericenter, ecc);
        OrbitState start;
        start.r = options.r_pericenter;
        start.L = L;
        const OrbitTrajectory traj = integrate_to_pericenters(pot, start, options.pericenters, options.integration_tol);
        scan.samples[idx] = {nu, b, ecc, L, E, apsidal_angle(traj).mean, false};
    });

    for (std::size_t i = 0; i < nu_values.size(); ++i) {
        ExponentVerdict verdict{nu_values[i], false, std::nullopt};
        if (n_ecc > 0) {
            const double first = scan.samples[i * n_ecc].apsidal_angle / std::numbers::pi;
            verdict.angle_over_pi = rational_within(first, options.tol, options.max_denominator);
            if (verdict.angle_over_pi) {
                const double target = verdict.angle_over_pi->value();
                verdict.closed_for_all = std::all_of(
                    scan.samples.begin() + static_cast<std::ptrdiff_t>(i * n_ecc),
                    scan.samples.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_ecc),
                    [&](const ScanSample& s) { return std::abs(s.apsidal_angle / std::numbers::pi - target) < options.tol; });
            }
        }
        for (std::size_t j = 0; j < n_ecc; ++j) scan.samples[i * n_ecc + j].closed = verdict.closed_for_all;
        scan.verdicts.push_back(verdict);
    }
    return scan;
}

}  // namespace orbitkit
