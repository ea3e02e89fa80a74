#include "orbitkit/orbit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

using Vec = std::array<double, 3>;  // r, theta, p_r

// Fehlberg 7(8) tableau; the eighth-order weights propagate the solution and
// err = 41/840 (k1 + k11 - k12 - k13) h estimates the seventh-order error.
constexpr std::size_t stages = 13;
[[maybe_unused]] constexpr std::array<double, stages> node = {0.0,     2.0 / 27, 1.0 / 9, 1.0 / 6, 5.0 / 12, 1.0 / 2, 5.0 / 6,
                                             1.0 / 6, 2.0 / 3,  1.0 / 3, 1.0,     0.0,      1.0};
constexpr std::array<std::array<double, stages>, stages> coupling = {{
    {},
    {2.0 / 27},
    {1.0 / 36, 1.0 / 12},
    {1.0 / 24, 0.0, 1.0 / 8},
    {5.0 / 12, 0.0, -25.0 / 16, 25.0 / 16},
    {1.0 / 20, 0.0, 0.0, 1.0 / 4, 1.0 / 5},
    {-25.0 / 108, 0.0, 0.0, 125.0 / 108, -65.0 / 27, 125.0 / 54},
    {31.0 / 300, 0.0, 0.0, 0.0, 61.0 / 225, -2.0 / 9, 13.0 / 900},
    {2.0, 0.0, 0.0, -53.0 / 6, 704.0 / 45, -107.0 / 9, 67.0 / 90, 3.0},
    {-91.0 / 108, 0.0, 0.0, 23.0 / 108, -976.0 / 135, 311.0 / 54, -19.0 / 60, 17.0 / 6, -1.0 / 12},
    {2383.0 / 4100, 0.0, 0.0, -341.0 / 164, 4496.0 / 1025, -301.0 / 82, 2133.0 / 4100, 45.0 / 82, 45.0 / 164,
     18.0 / 41},
    {3.0 / 205, 0.0, 0.0, 0.0, 0.0, -6.0 / 41, -3.0 / 205, -3.0 / 41, 3.0 / 41, 6.0 / 41, 0.0},
    {-1777.0 / 4100, 0.0, 0.0, -341.0 / 164, 4496.0 / 1025, -289.0 / 82, 2193.0 / 4100, 51.0 / 82, 33.0 / 164,
     12.0 / 41, 0.0, 1.0},
}};
constexpr std::array<double, stages> weight = {0.0,       0.0,       0.0,       0.0, 0.0,         34.0 / 105, 9.0 / 35,
                                               9.0 / 35,  9.0 / 280, 9.0 / 280, 0.0, 41.0 / 840, 41.0 / 840};
constexpr double err_weight = 41.0 / 840;  // on k1 + k11 - k12 - k13
constexpr double method_order = 7.0;       // order of the error estimator
constexpr double local_tol_floor = 5e-16;

class Equations {
public:
    Equations(const CombinedPotential& potential, double L) : potential_(potential), L_(L), L2_(L * L) {}

    Vec operator()(const Vec& y) const {
        const double r = y[0];
        return {y[2], L_ / (r * r), L2_ / (r * r * r) + potential_.force(r)};
    }

    double L() const { return L_; }

private:
    const CombinedPotential& potential_;
    double L_;
    double L2_;
};

struct Step {
    Vec y;
    Vec err;
    bool valid;
};

bool admissible(const Vec& y) {
    return y[0] > 0.0 && std::isfinite(y[0]) && std::isfinite(y[1]) && std::isfinite(y[2]);
}

// One embedded step of size h from y; k1 = eq(y) is passed in.
Step rk_step(const Equations& eq, const Vec& y, const Vec& k1, double h) {
    Step s{};
    s.valid = false;
    std::array<Vec, stages> k;
    k[0] = k1;
    for (std::size_t j = 1; j < stages; ++j) {
        Vec yj = y;
        for (std::size_t m = 0; m < j; ++m) {
            const double a = coupling[j][m];
            if (a == 0.0) continue;
            for (std::size_t i = 0; i < 3; ++i) yj[i] += h * a * k[m][i];
        }
        if (!admissible(yj)) return s;
        k[j] = eq(yj);
    }
    s.y = y;
    for (std::size_t m = 0; m < stages; ++m) {
        if (weight[m] == 0.0) continue;
        for (std::size_t i = 0; i < 3; ++i) s.y[i] += h * weight[m] * k[m][i];
    }
    if (!admissible(s.y)) return s;
    for (std::size_t i = 0; i < 3; ++i) s.err[i] = h * err_weight * (k[0][i] + k[10][i] - k[11][i] - k[12][i]);
    s.valid = true;
    return s;
}

double error_norm(const Step& s, const Vec& y0, double L, const IntegrationOptions& opt) {
    // theta is cumulative, so its scale is an angle rather than its magnitude;
    // p_r is measured against the transverse momentum L/r.
    const double r_scale = std::max(std::abs(y0[0]), std::abs(s.y[0]));
    const double p_scale = std::max({std::abs(y0[2]), std::abs(s.y[2]), L / r_scale});
    const std::array<double, 3> scale = {opt.atol + opt.rtol * r_scale, opt.atol + opt.rtol * M_PI,
                                         opt.atol + opt.rtol * p_scale};
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double q = s.err[i] / scale[i];
        sum += q * q;
    }
    return std::sqrt(sum / 3.0);
}

// Finds s in (0, h] with g(y(s)) = 0 given g(y0) and g(y(h)) of opposite sign,
// where y(s) is a single embedded step of size s from y0. Uses
// Illinois-modified regula falsi.
template <class G>
std::pair<double, Vec> locate(const Equations& eq, const Vec& y0, const Vec& k0, double h, double g0, double gh,
                              G&& g) {
    double s_lo = 0.0, s_hi = h;
    double g_lo = g0, g_hi = gh;
    Vec y_best = rk_step(eq, y0, k0, h).y;
    double s_best = h;
    int side = 0;
    for (int it = 0; it < 100; ++it) {
        double s = (s_lo * g_hi - s_hi * g_lo) / (g_hi - g_lo);
        if (!(s > s_lo && s < s_hi)) s = 0.5 * (s_lo + s_hi);
        const Step st = rk_step(eq, y0, k0, s);
        const double gs = g(st.y);
        s_best = s;
        y_best = st.y;
        if (gs == 0.0) break;
        if ((gs < 0.0) == (g_lo < 0.0)) {
            s_lo = s;
            g_lo = gs;
            if (side == -1) g_hi *= 0.5;
            side = -1;
        } else {
            s_hi = s;
            g_hi = gs;
            if (side == 1) g_lo *= 0.5;
            side = 1;
        }
        if (s_hi - s_lo <= 1e-14 * std::max(1.0, h)) break;
    }
    return {s_best, y_best};
}

}  // namespace

double orbit_energy(const CombinedPotential& potential, const OrbitState& s) {
    return 0.5 * s.p_r * s.p_r + s.L * s.L / (2.0 * s.r * s.r) + potential.value(s.r);
}

OrbitState pericenter_start(const CombinedPotential& potential, double L, double E) {
    const auto [r_min, r_max] = turning_points(potential, L, E);
    (void)r_max;
    OrbitState s;
    s.r = r_min;
    s.L = L;
    return s;
}

OrbitTrajectory integrate_orbit(const CombinedPotential& potential, const OrbitState& init, double t_end,
                                double tol) {
    IntegrationOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    return integrate_orbit(potential, init, t_end, opt);
}

OrbitTrajectory integrate_orbit(const CombinedPotential& potential, const OrbitState& init, double t_end,
                                const IntegrationOptions& opt) {
    if (!(init.r > 0.0)) throw DomainError("domain", "initial radius must be positive");
    if (!(opt.rtol > 0.0) || !(opt.atol > 0.0)) throw DomainError("domain", "tolerances must be positive");
    if (!(t_end >= init.t)) throw DomainError("domain", "t_end must not precede the initial time");

    const Equations eq(potential, init.L);
    OrbitTrajectory traj;
    traj.L0 = init.L;
    traj.E0 = orbit_energy(potential, init);
    const double energy_scale = traj.E0 != 0.0 ? std::abs(traj.E0) : 1.0;

    auto record = [&](double t, const Vec& y) {
        const OrbitState s{t, y[0], y[1], y[2], init.L};
        const double drift = std::abs(orbit_energy(potential, s) - traj.E0) / energy_scale;
        traj.max_energy_drift = std::max(traj.max_energy_drift, drift);
        traj.final_state = s;
        if (opt.record_states) traj.states.push_back(s);
    };

    Vec y = {init.r, init.theta, init.p_r};
    double t = init.t;
    Vec k = eq(y);
    record(t, y);

    const double collapse_r = opt.collapse_ratio * init.r;
    double h = std::min(1e-2 * init.r * init.r / std::max(init.L, 1e-300), 1e-2 * init.r / std::max(std::abs(init.p_r), 1e-300));
    h = std::min(h, t_end - t);
    if (h <= 0.0) return traj;

    // Error per unit step over a finite span, so the global drift does not
    // grow with the number of steps taken.
    const double span = t_end - init.t;
    const bool per_unit_step = std::isfinite(span);
    const double k_exp = per_unit_step ? method_order : method_order + 1;
    constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0;
    const double alpha = 0.7 / k_exp, beta = 0.4 / k_exp;  // PI controller exponents
    double err_prev = 1e-4;

    for (std::size_t n = 0; n < opt.max_steps; ++n) {
        const double remaining = t_end - t;
        if (remaining <= 0.0) break;
        bool last = false;
        if (h >= remaining) {
            h = remaining;
            last = true;
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            std::ostringstream msg;
            // Steps shrink like t_c - t on the way into r = 0 and can underflow
            // before collapse_ratio is reached.
            if (y[2] < 0.0 && y[0] < 1e-2 * init.r) {
                msg << "fall to center: step size collapsed at r=" << y[0] << ", t=" << t;
                throw DomainError("fall_to_center", msg.str());
            }
            msg << "step size underflow at t=" << t << ", r=" << y[0];
            throw NumericalError("step_underflow", msg.str());
        }

        const Step st = rk_step(eq, y, k, h);
        if (!st.valid) {
            h *= 0.25;
            continue;
        }
        double err = error_norm(st, y, init.L, opt);
        // The effective local tolerance stays above a few ulps.
        if (per_unit_step) err *= std::min(span / h, std::max(1.0, opt.rtol / local_tol_floor));
        err = std::max(err, 1e-16);
        if (err > 1.0) {
            h *= std::max(fac_min, safety * std::pow(err, -1.0 / k_exp));
            continue;
        }

        // Accepted step [t, t+h]. Events in order: theta stop, pericenter.
        const Vec y0 = y;
        const Vec k0 = k;
        const double t0 = t;
        bool stop = false;

        std::optional<std::pair<double, Vec>> theta_hit;
        if (opt.theta_end && y0[1] < *opt.theta_end && st.y[1] >= *opt.theta_end) {
            const double target = *opt.theta_end;
            theta_hit = locate(eq, y0, k0, h, y0[1] - target, st.y[1] - target,
                               [target](const Vec& v) { return v[1] - target; });
        }
        if (y0[2] < 0.0 && st.y[2] >= 0.0) {
            const auto [s, yp] = locate(eq, y0, k0, h, y0[2], st.y[2], [](const Vec& v) { return v[2]; });
            if (!theta_hit || s <= theta_hit->first) {
                traj.pericenters.push_back({t0 + s, yp[1], yp[0]});
                const bool limit = opt.max_pericenters && traj.pericenters.size() >= *opt.max_pericenters;
                if (s < h || limit) record(t0 + s, yp);
                if (limit) {
                    t = t0 + s;
                    y = yp;
                    traj.termination = Termination::pericenter_limit;
                    stop = true;
                }
            }
        }
        if (stop) break;
        if (theta_hit) {
            t = t0 + theta_hit->first;
            y = theta_hit->second;
            record(t, y);
            traj.termination = Termination::theta_limit;
            break;
        }

        t = last ? t_end : t + h;
        y = st.y;
        k = eq(y);
        record(t, y);

        if (y[0] < collapse_r) {
            std::ostringstream msg;
            msg << "fall to center: r=" << y[0] << " dropped below " << collapse_r << " at t=" << t;
            throw DomainError("fall_to_center", msg.str());
        }
        if (opt.escape_ratio && y[0] > *opt.escape_ratio * init.r) {
            traj.termination = Termination::escaped;
            break;
        }
        if (last) {
            traj.termination = Termination::time_limit;
            break;
        }

        const double factor = safety * std::pow(err, -alpha) * std::pow(err_prev, beta);
        h *= std::clamp(factor, fac_min, fac_max);
        err_prev = err;
    }
    return traj;
}

}  // namespace orbitkit
