#pragma once

#include <vector>

#include "orbitkit/orbit.hpp"
#include "orbitkit/potential.hpp"

namespace orbitkit {

struct RungeLenzSample {
    double t;
    double Rx;
    double Ry;
    double magnitude;
    double angle;  // continuous (unwrapped) direction of R
};

/// R = p x L - k r/|r| with k = -a, for potentials whose power-law part is
/// Coulomb-like (nu = -1, a < 0). Constant when b = 0; precesses otherwise.
std::vector<RungeLenzSample> runge_lenz_track(const CombinedPotential& potential, const OrbitTrajectory& traj);

RungeLenzSample runge_lenz_at(const CombinedPotential& potential, const OrbitState& state);

struct ApsisPrecession {
    double per_radial_period;   // mean pericenter advance minus 2 pi
    double direction_mismatch;  // max |angle(R) - theta| at pericenters, wrapped to (-pi, pi]
};

/// Needs at least two pericenters on the trajectory; R is evaluated at the
/// pericenter states, where it must point along the apsis line.
ApsisPrecession apsis_precession(const CombinedPotential& potential, const OrbitTrajectory& traj);

}  // namespace orbitkit
