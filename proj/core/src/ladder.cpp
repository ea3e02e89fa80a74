#include "orbitkit/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbitkit/error.hpp"

namespace orbitkit {

std::string to_string(LadderBranch branch) { return branch == LadderBranch::harmonic ? "harmonic" : "coulomb"; }
std::string to_string(LadderDirection direction) { return direction == LadderDirection::up ? "up" : "down"; }

LadderSpec factorize(const CombinedPotential& potential, double n) {
    if (!(n > 0.0)) throw DomainError("domain", "n must be positive");
    if (potential.is_harmonic_like()) {
        return {LadderBranch::harmonic, n, 2.0 * n - 1.5, -(2.0 * n - 0.5), 2, std::sqrt(2.0 * potential.a()),
                std::nullopt, std::nullopt};
    }
    if (potential.is_coulomb_like()) {
        LadderSpec spec{LadderBranch::coulomb, n, n - 1.0, -n, 1, -potential.a() / n, n / (n + 1.0), std::nullopt};
        if (n > 1.0) spec.scaling_down = n / (n - 1.0);
        return spec;
    }
    std::ostringstream msg;
    msg << "factorization impossible for a=" << potential.a() << ", nu=" << potential.nu()
        << ": only nu=2 (a>0) and nu=-1 (a<0) factorize";
    throw DomainError("factorization_impossible", msg.str());
}

GridFunction scaling_apply(double k, const GridFunction& f) {
    if (!(k > 0.0)) throw DomainError("domain", "scaling factor must be positive");
    const RadialGrid& g = f.grid;
    const std::size_t n = f.values.size();
    const double h = g.h();
    GridFunction out{g, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = k * g.r(i);
        const double pos = (x - g.r_min) / h;
        if (pos > static_cast<double>(n - 1) + 1e-9) continue;
        // Stencil j0..j0+3 around the interval containing x.
        const auto cell = static_cast<long>(std::floor(pos));
        const long j0 = std::clamp<long>(cell - 1, 0, static_cast<long>(n) - 4);
        const double t = pos - static_cast<double>(j0);
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) {
            double w = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) w *= (t - b) / static_cast<double>(a - b);
            acc += w * f.values[static_cast<std::size_t>(j0 + a)];
        }
        out.values[i] = acc;
    }
    return out;
}

GridFunction r_derivative(const GridFunction& f) {
    const auto& v = f.values;
    const std::size_t n = v.size();
    if (n < 5) throw DomainError("domain", "need at least five grid points");
    const double h = f.grid.h();
    GridFunction out{f.grid, std::vector<double>(n, 0.0)};
    auto d = [&](std::size_t i) -> double {
        if (i >= 2 && i + 2 < n) return (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
        if (i == 0) return (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
        if (i == 1) return (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
        if (i == n - 2)
            return (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) / (12.0 * h);
        return (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]) / (12.0 * h);
    };
    for (std::size_t i = 0; i < n; ++i) out.values[i] = f.grid.r(i) * d(i);
    return out;
}

GridFunction second_derivative(const GridFunction& f) {
    const auto& v = f.values;
    const std::size_t n = v.size();
    if (n < 6) throw DomainError("domain", "need at least six grid points");
    const double h2 = f.grid.h() * f.grid.h();
    GridFunction out{f.grid, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= 2 && i + 2 < n) {
            out.values[i] = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h2);
        } else if (i < 2) {
            const std::size_t j = i;  // forward, 4th order
            out.values[i] = (45.0 * v[j] - 154.0 * v[j + 1] + 214.0 * v[j + 2] - 156.0 * v[j + 3] + 61.0 * v[j + 4] -
                             10.0 * v[j + 5]) / (12.0 * h2);
        } else {
            const std::size_t j = i;  // backward
            out.values[i] = (45.0 * v[j] - 154.0 * v[j - 1] + 214.0 * v[j - 2] - 156.0 * v[j - 3] + 61.0 * v[j - 4] -
                             10.0 * v[j - 5]) / (12.0 * h2);
        }
    }
    return out;
}

void fix_sign(GridFunction& f) {
    double peak = 0.0;
    for (double v : f.values) peak = std::max(peak, std::abs(v));
    for (double v : f.values) {
        if (std::abs(v) > 1e-3 * peak) {
            if (v < 0.0)
                for (double& x : f.values) x = -x;
            return;
        }
    }
}

namespace {

// s(r) for the branch
double s_of(const LadderSpec& spec, double r) {
    return spec.branch == LadderBranch::harmonic ? spec.s_coefficient * r * r : spec.s_coefficient * r;
}

// (r d/dr + sign_s * s(r) + c) f
GridFunction first_order(const GridFunction& f, const LadderSpec& spec, double sign_s, double c) {
    GridFunction out = r_derivative(f);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += (sign_s * s_of(spec, f.grid.r(i)) + c) * f.values[i];
    return out;
}

}  // namespace

LadderResult apply_ladder(const EigenSolution& sol, const LadderSpec& spec, LadderDirection direction) {
    const double n = spec.n;
    const bool up = direction == LadderDirection::up;
    GridFunction raw;
    if (spec.branch == LadderBranch::harmonic) {
        // up: rD - s + (2n + 1/2); down: rD + s - (2n - 1/2)
        raw = up ? first_order(sol.chi, spec, -1.0, 2.0 * n + 0.5) : first_order(sol.chi, spec, +1.0, -(2.0 * n - 0.5));
    } else {
        // up: rD - s + n, then M(n/(n+1)); down: rD + s - n, then M(n/(n-1)). s = -a r/n.
        raw = up ? first_order(sol.chi, spec, -1.0, n) : first_order(sol.chi, spec, +1.0, -n);
    }

    LadderResult result{GridFunction{sol.chi.grid, std::vector<double>(sol.chi.values.size(), 0.0)}, 0.0, false};
    result.raw_norm = l2_norm(raw) / l2_norm(sol.chi);
    const bool no_lower = spec.branch == LadderBranch::coulomb && !up && !spec.scaling_down;
    if (result.raw_norm < 1e-8 || no_lower) {
        result.annihilated = true;
        return result;
    }
    if (spec.branch == LadderBranch::coulomb) raw = scaling_apply(up ? *spec.scaling_up : *spec.scaling_down, raw);

    const double norm = l2_norm(raw);
    for (double& v : raw.values) v /= norm;
    fix_sign(raw);
    result.chi = std::move(raw);
    return result;
}

double FactorizationResidual::max() const noexcept { return std::max({lowering_first, raising_first, eigen}); }

FactorizationResidual verify_factorization_identity(const EigenSolution& sol, const LadderSpec& spec,
                                                    const CombinedPotential& potential) {
    const GridFunction& chi = sol.chi;
    const std::size_t n_pts = chi.values.size();
    const double n = spec.n;
    const double E_n = spec.branch == LadderBranch::harmonic ? 2.0 * spec.s_coefficient * n
                                                             : -0.5 * potential.a() * potential.a() / (n * n);

    // D_n chi = r^2 chi'' - 2a r^(nu+2) chi + 2 E_n r^2 chi
    const GridFunction d2 = second_derivative(chi);
    std::vector<double> Dn(n_pts);
    for (std::size_t i = 0; i < n_pts; ++i) {
        const double r = chi.grid.r(i);
        Dn[i] = r * r * d2.values[i] - 2.0 * potential.a() * std::pow(r, potential.nu() + 2.0) * chi.values[i] +
                2.0 * E_n * r * r * chi.values[i];
    }

    // Lowering-first ordering: (rD - s + A)(rD + s + B)
    const GridFunction inner1 = first_order(chi, spec, +1.0, spec.B);
    const GridFunction lhs1 = first_order(inner1, spec, -1.0, spec.A);
    // Raising-first ordering: (rD + s + A2)(rD - s + B2), again with A2 + B2 + 1 = 0
    const double A2 = spec.branch == LadderBranch::harmonic ? -(2.0 * n + 1.5) : -(n + 1.0);
    const double B2 = spec.branch == LadderBranch::harmonic ? 2.0 * n + 0.5 : n;
    const GridFunction inner2 = first_order(chi, spec, -1.0, B2);
    const GridFunction lhs2 = first_order(inner2, spec, +1.0, A2);

    const double lp = sol.l_prime;
    double peak = 0.0;
    for (double v : chi.values) peak = std::max(peak, std::abs(v));
    FactorizationResidual res{0.0, 0.0, 0.0};
    // Skip the stencil-contaminated edges.
    for (std::size_t i = 6; i + 6 < n_pts; ++i) {
        const double c = chi.values[i];
        res.lowering_first = std::max(res.lowering_first, std::abs(lhs1.values[i] - (Dn[i] + spec.A * spec.B * c)));
        res.raising_first = std::max(res.raising_first, std::abs(lhs2.values[i] - (Dn[i] + A2 * B2 * c)));
        res.eigen = std::max(res.eigen, std::abs(Dn[i] - lp * (lp + 1.0) * c));
    }
    res.lowering_first /= peak;
    res.raising_first /= peak;
    res.eigen /= peak;
    return res;
}

AngularLadderReport no_angular_ladder_check(double b, int l) {
    const double lp = effective_l(l, b);
    const double lp_next = effective_l(l + 1, b);
    const double spacing = lp_next - lp;
    return {l, lp, lp_next, spacing, std::abs(spacing - 1.0) < 1e-12};
}

}  // namespace orbitkit
