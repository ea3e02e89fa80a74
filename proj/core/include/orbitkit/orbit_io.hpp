#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "orbitkit/orbit.hpp"
#include "orbitkit/potential.hpp"

namespace orbitkit {

/// Round-trip safe decimal rendering (17 significant digits).
std::string format_real(double x);

/// Columns: t, r, theta, x, y, p_r, E_rel_drift.
void emit_orbit_csv(const CombinedPotential& potential, const OrbitTrajectory& traj, std::ostream& out);
void emit_orbit_csv(const CombinedPotential& potential, const OrbitTrajectory& traj,
                    const std::filesystem::path& path);

}  // namespace orbitkit
