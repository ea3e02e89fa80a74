#include "orbitkit/runge_lenz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

void require_coulomb_like(const CombinedPotential& potential) {
    if (!potential.is_coulomb_like())
        throw DomainError("runge_lenz_undefined",
                          "Runge-Lenz vector undefined for this potential: power-law part must be a/r with a < 0");
}

double wrap_angle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    x = std::fmod(x, two_pi);
    if (x > std::numbers::pi) x -= two_pi;
    if (x <= -std::numbers::pi) x += two_pi;
    return x;
}

}  // namespace

RungeLenzSample runge_lenz_at(const CombinedPotential& potential, const OrbitState& s) {
    require_coulomb_like(potential);
    const double k = -potential.a();
    // R = (L^2/r - k) r_hat - p_r L theta_hat
    const double radial = s.L * s.L / s.r - k;
    const double transverse = -s.p_r * s.L;
    const double c = std::cos(s.theta), sn = std::sin(s.theta);
    const double Rx = radial * c - transverse * sn;
    const double Ry = radial * sn + transverse * c;
    return {s.t, Rx, Ry, std::hypot(Rx, Ry), std::atan2(Ry, Rx)};
}

std::vector<RungeLenzSample> runge_lenz_track(const CombinedPotential& potential, const OrbitTrajectory& traj) {
    require_coulomb_like(potential);
    std::vector<RungeLenzSample> out;
    out.reserve(traj.states.size());
    for (const OrbitState& s : traj.states) {
        RungeLenzSample sample = runge_lenz_at(potential, s);
        if (!out.empty()) sample.angle = out.back().angle + wrap_angle(sample.angle - out.back().angle);
        out.push_back(sample);
    }
    return out;
}

ApsisPrecession apsis_precession(const CombinedPotential& potential, const OrbitTrajectory& traj) {
    require_coulomb_like(potential);
    const auto& peri = traj.pericenters;
    if (peri.size() < 2) throw DomainError("insufficient_oscillations", "need at least two pericenters");
    const double mean_advance = (peri.back().theta - peri.front().theta) / static_cast<double>(peri.size() - 1);

    double mismatch = 0.0;
    for (const Apsis& a : peri) {
        const auto it = std::find_if(traj.states.begin(), traj.states.end(),
                                     [&](const OrbitState& s) { return s.t == a.t; });
        if (it == traj.states.end()) continue;
        const RungeLenzSample R = runge_lenz_at(potential, *it);
        mismatch = std::max(mismatch, std::abs(wrap_angle(R.angle - a.theta)));
    }
    return {mean_advance - 2.0 * std::numbers::pi, mismatch};
}

}  // namespace orbitkit
