#include "orbitkit/orbit_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "orbitkit/error.hpp"

namespace orbitkit {

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit_orbit_csv(const CombinedPotential& potential, const OrbitTrajectory& traj, std::ostream& out) {
    out << "t,r,theta,x,y,p_r,E_rel_drift\n";
    const double scale = traj.E0 != 0.0 ? std::abs(traj.E0) : 1.0;
    for (const OrbitState& s : traj.states) {
        const double drift = (orbit_energy(potential, s) - traj.E0) / scale;
        out << format_real(s.t) << ',' << format_real(s.r) << ',' << format_real(s.theta) << ','
            << format_real(s.r * std::cos(s.theta)) << ',' << format_real(s.r * std::sin(s.theta)) << ','
            << format_real(s.p_r) << ',' << format_real(drift) << '\n';
    }
}

void emit_orbit_csv(const CombinedPotential& potential, const OrbitTrajectory& traj,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("io", "cannot open " + path.string() + " for writing");
    emit_orbit_csv(potential, traj, out);
    if (!out) throw DomainError("io", "failed writing " + path.string());
}

}  // namespace orbitkit
