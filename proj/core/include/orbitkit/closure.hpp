#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbitkit/orbit.hpp"
#include "orbitkit/potential.hpp"
#include "orbitkit/rational.hpp"

namespace orbitkit {

/// Pericenter-to-pericenter angle statistics of a trajectory.
struct ApsidalAngle {
    double mean;
    double spread;  // max - min over successive intervals
    std::size_t intervals;
};

/// Requires at least three recorded pericenters.
ApsidalAngle apsidal_angle(const OrbitTrajectory& traj);

struct ClosureOptions {
    double tol_rational = 1e-6;
    std::int64_t max_denominator = 64;
    double integration_tol = 1e-10;
    double gap_tol = 1e-5;
    std::size_t pericenters = 4;
};

struct ClosureReport {
    double kappa = 0.0;
    double beta = 0.0;
    double beta_kappa = 0.0;       // sqrt(nu + 2) * kappa, the near-circular value
    double frequency_ratio = 0.0;  // 2 pi / measured apsidal angle (equals beta_kappa near circularity)
    std::optional<Rational> rational;
    bool closed = false;
    std::optional<std::int64_t> period_revolutions;
    std::optional<double> numeric_gap;
};

/// Scaled phase-space distance sqrt((dr/r0)^2 + (dp_r r0/L)^2).
double phase_gap(const OrbitState& a, const OrbitState& b);

/// Decides whether the bound orbit (E, L) closes: measures the radial/angular
/// frequency ratio, looks for a rational q/p with p <= max_denominator, then
/// integrates p full revolutions from the pericenter and measures the gap.
ClosureReport closure_analysis(const CombinedPotential& potential, double L, double E,
                               const ClosureOptions& options = {});

inline ClosureReport closure_analysis(const CombinedPotential& potential, double L, double E, double tol_rational,
                                      std::int64_t max_denominator) {
    ClosureOptions opt;
    opt.tol_rational = tol_rational;
    opt.max_denominator = max_denominator;
    return closure_analysis(potential, L, E, opt);
}

struct ScanOptions {
    double a_magnitude = 1.0;   // a = sign(nu) * a_magnitude
    double r_pericenter = 1.0;  // every sample starts at this pericenter radius
    double tol = 1e-4;          // on apsidal_angle / pi
    std::int64_t max_denominator = 64;
    double integration_tol = 1e-11;
    std::size_t pericenters = 4;
    unsigned threads = 1;
};

struct ScanSample {
    double nu;
    double b;
    double eccentricity;
    double L;
    double E;
    double apsidal_angle;
    bool closed;  // verdict of the sample's exponent
};

struct ExponentVerdict {
    double nu;
    bool closed_for_all;
    std::optional<Rational> angle_over_pi;
};

struct BertrandScan {
    std::vector<ScanSample> samples;  // nu-major, eccentricity-minor
    std::vector<ExponentVerdict> verdicts;

    std::vector<double> closed_exponents() const;
};

/// Initial conditions with pericenter r1 and apocenter r1 (1+e)/(1-e).
/// Returns {L, E}; throws when no real L realizes that eccentricity.
std::pair<double, double> orbit_for_eccentricity(const CombinedPotential& potential, double r_pericenter,
                                                 double eccentricity);

/// Measures apsidal angles over (nu, eccentricity) and flags the exponents
/// whose angle / pi is one rational for every sampled eccentricity.
BertrandScan bertrand_scan(std::span<const double> nu_values, std::span<const double> eccentricities, double b,
                           const ScanOptions& options = {});

}  // namespace orbitkit
