#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orbitkit/potential.hpp"

namespace orbitkit {

/// Planar phase-space point. theta is cumulative (never wrapped) and L is a
/// constant of motion carried along rather than integrated.
struct OrbitState {
    double t = 0.0;
    double r = 1.0;
    double theta = 0.0;
    double p_r = 0.0;
    double L = 1.0;

    double u() const noexcept { return 1.0 / r; }
};

struct Apsis {
    double t;
    double theta;
    double r;
};

enum class Termination { time_limit, theta_limit, pericenter_limit, escaped };

struct OrbitTrajectory {
    std::vector<OrbitState> states;
    double E0 = 0.0;
    double L0 = 0.0;
    double max_energy_drift = 0.0;
    std::vector<Apsis> pericenters;
    OrbitState final_state;  // kept even when record_states is off
    Termination termination = Termination::time_limit;
};

struct IntegrationOptions {
    // With a finite t_end the tolerances budget the error accumulated over
    // the whole span: each step may contribute in proportion to h / (t_end - t0).
    // An infinite t_end falls back to per-step control.
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 20'000'000;
    bool record_states = true;
    // Optional early stops; t_end always applies.
    std::optional<double> theta_end;
    std::optional<std::size_t> max_pericenters;
    // Stop (without error) once r exceeds escape_ratio * initial r.
    std::optional<double> escape_ratio;
    // Abort with fall_to_center once r drops below collapse_ratio * initial r.
    double collapse_ratio = 1e-8;
};

double orbit_energy(const CombinedPotential& potential, const OrbitState& state);

/// Pericenter start for the orbit family keyed by (E, L): r = r_min, p_r = 0,
/// theta = 0, t = 0.
OrbitState pericenter_start(const CombinedPotential& potential, double L, double E);

/// Integrates r' = p_r, theta' = L/r^2, p_r' = L^2/r^3 + f(r) with an
/// adaptive Fehlberg 7(8) pair. Pericenters (p_r crossing from - to +)
/// are located to ~1e-13 in t by re-stepping from the bracketing state.
OrbitTrajectory integrate_orbit(const CombinedPotential& potential, const OrbitState& init, double t_end,
                                const IntegrationOptions& options);

/// Convenience overload: rtol = tol, atol = tol / 100.
OrbitTrajectory integrate_orbit(const CombinedPotential& potential, const OrbitState& init, double t_end,
                                double tol = 1e-10);

}  // namespace orbitkit
