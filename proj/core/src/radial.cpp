#include "orbitkit/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orbitkit/error.hpp"
#include "orbitkit/wkb.hpp"

namespace orbitkit {

namespace {

constexpr double tail_exponent = 36.0;  // inward integration starts where e^-S ~ 2e-16
constexpr double min_tail_exponent = 15.0;

// Numerov machinery for chi'' = (q(r) - 2E) chi with q = l'(l'+1)/r^2 + 2W(r).
class Shooter {
public:
    explicit Shooter(const RadialProblem& problem)
        : problem_(problem), grid_(problem.grid()), h_(grid_.h()), h2_12_(h_ * h_ / 12.0) {
        const double lp = problem.l_prime();
        const auto& pot = problem.potential();
        const std::size_t n = grid_.n_points;
        q_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = grid_.r(i);
            q_[i] = lp * (lp + 1.0) / (r * r) + 2.0 * pot.power_law(r);
        }
        // First index where the Numerov weights are comfortably positive.
        start_ = 1;
        while (start_ + 3 < n && h2_12_ * std::abs(q_[start_]) > 0.1) ++start_;
    }

    std::size_t size() const { return q_.size(); }
    double q(std::size_t i) const { return q_[i]; }

    // Small-r series chi ~ r^s (1 + c_W r^(nu+2) + c_WW r^(2(nu+2)) + c_E r^2), s = l'+1.
    double origin_series(double r, double E) const {
        const double s = problem_.l_prime() + 1.0;
        const double a = problem_.potential().a();
        const double nu = problem_.potential().nu();
        auto denom = [s](double shift) { return (s + shift) * (s + shift - 1.0) - s * (s - 1.0); };
        const double cW = 2.0 * a / denom(nu + 2.0);
        const double cWW = 2.0 * a * cW / denom(2.0 * (nu + 2.0));
        const double cE = -2.0 * E / denom(2.0);
        return std::pow(r, s) * (1.0 + cW * std::pow(r, nu + 2.0) + cWW * std::pow(r, 2.0 * (nu + 2.0)) + cE * r * r);
    }

    // Nodes of the outward solution across the whole grid, rescaling to stay finite.
    int outward_nodes(double E) const {
        double y_prev = origin_series(grid_.r(start_ - 1), E);
        double y = origin_series(grid_.r(start_), E);
        double w_prev = (1.0 - h2_12_ * k(start_ - 1, E)) * y_prev;
        double w = (1.0 - h2_12_ * k(start_, E)) * y;
        int nodes = 0;
        int sign = y > 0.0 ? 1 : (y < 0.0 ? -1 : 0);
        for (std::size_t i = start_; i + 1 < size(); ++i) {
            const double w_next = 2.0 * w - w_prev + 12.0 * h2_12_ * k(i, E) * y;
            const double y_next = w_next / (1.0 - h2_12_ * k(i + 1, E));
            const int s = y_next > 0.0 ? 1 : (y_next < 0.0 ? -1 : 0);
            if (s != 0) {
                if (sign != 0 && s != sign) ++nodes;
                sign = s;
            }
            w_prev = w;
            w = w_next;
            y = y_next;
            if (std::abs(w) > 1e250) {
                w *= 1e-250;
                w_prev *= 1e-250;
                y *= 1e-250;
            }
        }
        return nodes;
    }

    // Outer classical turning point: last index with q/2 < E.
    std::size_t turning_index(double E) const {
        std::size_t m = size() - 1;
        while (m > start_ && 0.5 * q_[m] >= E) --m;
        return std::clamp<std::size_t>(m, start_ + 2, size() - 4);
    }

    // Index where the WKB decay exponent beyond `from` reaches the target.
    std::pair<std::size_t, double> tail_end(std::size_t from, double E) const {
        double S = 0.0;
        for (std::size_t i = from; i < size(); ++i) {
            const double kk = k(i, E);
            if (kk > 0.0) S += std::sqrt(kk) * h_;
            if (S >= tail_exponent) return {i, S};
        }
        return {size() - 1, S};
    }

    struct Shot {
        std::vector<double> out;  // indices [0, m+1]
        std::vector<double> in;   // indices [m, end], stored by absolute index
        double defect;
    };

    Shot shoot(double E, std::size_t m, std::size_t end) const {
        Shot shot;
        shot.out.assign(m + 2, 0.0);
        for (std::size_t i = 0; i <= start_; ++i) shot.out[i] = origin_series(grid_.r(i), E);
        double w_prev = (1.0 - h2_12_ * k(start_ - 1, E)) * shot.out[start_ - 1];
        double w = (1.0 - h2_12_ * k(start_, E)) * shot.out[start_];
        for (std::size_t i = start_; i <= m; ++i) {
            const double w_next = 2.0 * w - w_prev + 12.0 * h2_12_ * k(i, E) * shot.out[i];
            shot.out[i + 1] = w_next / (1.0 - h2_12_ * k(i + 1, E));
            w_prev = w;
            w = w_next;
        }

        shot.in.assign(end + 1, 0.0);
        shot.in[end] = 0.0;
        shot.in[end - 1] = 1e-20;
        w = (1.0 - h2_12_ * k(end, E)) * shot.in[end];
        w_prev = (1.0 - h2_12_ * k(end - 1, E)) * shot.in[end - 1];
        // Walk down: w_{i-1} = 2 w_i - w_{i+1} + h^2 k_i y_i
        double w_hi = w;
        double w_cur = w_prev;
        for (std::size_t i = end - 1; i > m; --i) {
            const double w_lo = 2.0 * w_cur - w_hi + 12.0 * h2_12_ * k(i, E) * shot.in[i];
            shot.in[i - 1] = w_lo / (1.0 - h2_12_ * k(i - 1, E));
            w_hi = w_cur;
            w_cur = w_lo;
        }

        auto wv = [&](const std::vector<double>& y, std::size_t i) { return (1.0 - h2_12_ * k(i, E)) * y[i]; };
        const double casoratian = wv(shot.out, m + 1) * wv(shot.in, m) - wv(shot.in, m + 1) * wv(shot.out, m);
        double n_out = 0.0, n_in = 0.0;
        for (std::size_t i = 0; i <= m + 1; ++i) n_out = std::max(n_out, std::abs(shot.out[i]));
        for (std::size_t i = m; i <= end; ++i) n_in = std::max(n_in, std::abs(shot.in[i]));
        shot.defect = casoratian / (h_ * n_out * n_in);
        return shot;
    }

private:
    double k(std::size_t i, double E) const { return q_[i] - 2.0 * E; }

    const RadialProblem& problem_;
    const RadialGrid& grid_;
    double h_;
    double h2_12_;
    std::vector<double> q_;
    std::size_t start_ = 1;
};

double wkb_tail_radius(const CombinedPotential& pot, double l_prime, double E, double r_from, double step) {
    // Outer turning point, then march until the decay exponent reaches 30.
    auto U = [&](double r) { return 0.5 * l_prime * (l_prime + 1.0) / (r * r) + pot.power_law(r); };
    double r = r_from;
    while (U(r) < E) r += step;
    double S = 0.0;
    while (S < 30.0) {
        S += std::sqrt(std::max(0.0, 2.0 * (U(r) - E))) * step;
        r += step;
        if (r > 1e7 * r_from) break;
    }
    return r;
}

}  // namespace

double integrate(const RadialGrid& grid, const std::vector<double>& f) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    const double h = grid.h();
    if (n == 2) return 0.5 * h * (f[0] + f[1]);
    const std::size_t intervals = n - 1;
    // Simpson over an even number of intervals, 3/8 rule for an odd remainder.
    const std::size_t simpson_end = (intervals % 2 == 0) ? n - 1 : n - 4;
    double sum = 0.0;
    if (simpson_end >= 2) {
        double acc = f[0] + f[simpson_end];
        for (std::size_t i = 1; i < simpson_end; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
        sum += acc * h / 3.0;
    }
    if (intervals % 2 == 1) {
        const std::size_t j = n - 4;
        sum += 3.0 * h / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
    }
    return sum;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    if (f.values.size() != g.values.size() || f.grid.r_min != g.grid.r_min || f.grid.r_max != g.grid.r_max)
        throw DomainError("grid_mismatch", "grid functions live on different grids");
    std::vector<double> prod(f.values.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f.values[i] * g.values[i];
    return integrate(f.grid, prod);
}

double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

double effective_l(int l, double b) {
    if (l < 0) throw DomainError("domain", "l must be nonnegative");
    const double half = l + 0.5;
    const double radicand = 1.0 + 2.0 * b / (half * half);
    if (radicand <= 0.0) {
        std::ostringstream msg;
        msg << "supercritical inverse-square term: b=" << b << " <= critical b=" << -half * half / 2.0
            << " for l=" << l;
        throw DomainError("supercritical", msg.str());
    }
    return -0.5 + half * std::sqrt(radicand);
}

double characteristic_length(const CombinedPotential& p) {
    if (p.nu() == -1.0) return 1.0 / std::abs(p.a());
    if (p.nu() == 2.0) return std::pow(2.0 * std::abs(p.a()), -0.25);
    return std::pow(std::abs(p.a()), -1.0 / (p.nu() + 2.0));
}

RadialGrid default_grid(const CombinedPotential& potential, double l_prime, int max_n_r) {
    potential.require_stable();
    const double len = characteristic_length(potential);
    const double E_est = wkb_energy(potential, wkb_quantum_number(potential, l_prime, max_n_r));
    const double r_need = 1.15 * wkb_tail_radius(potential, l_prime, E_est, len, 0.05 * len);
    RadialGrid grid;
    grid.r_min = 1e-6;
    grid.n_points = 20000;
    grid.r_max = 50.0 * len;
    if (potential.a() > 0.0) {
        // Steep confining walls: keep h^2 q / 12 small at r_max, or Numerov diverges there.
        const double q_max = 2.0 * potential.power_law(grid.r_max);
        if (grid.h() * grid.h() * q_max / 12.0 > 0.1) grid.r_max = std::max(r_need, 8.0 * len);
        return grid;
    }
    const double h = grid.h();
    if (r_need > grid.r_max) {
        grid.n_points = static_cast<std::size_t>(std::ceil((r_need - grid.r_min) / h)) + 1;
        grid.r_max = grid.r_min + h * static_cast<double>(grid.n_points - 1);
    }
    return grid;
}

RadialProblem::RadialProblem(const CombinedPotential& potential, int l, const RadialGrid& grid)
    : potential_(potential), l_(l), l_prime_(effective_l(l, potential.b())), grid_(grid) {
    potential_.require_stable();
    if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || grid.n_points < 16)
        throw DomainError("domain", "grid needs 0 < r_min < r_max and at least 16 points");
}

RadialProblem::RadialProblem(const CombinedPotential& potential, int l, int max_n_r)
    : RadialProblem(potential, l, default_grid(potential, effective_l(l, potential.b()), max_n_r)) {}

int count_nodes(const std::vector<double>& values, double rel_threshold) {
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    const double cut = rel_threshold * peak;
    int nodes = 0, sign = 0;
    for (double v : values) {
        if (std::abs(v) <= cut) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign) ++nodes;
        sign = s;
    }
    return nodes;
}

EigenSolution solve_radial(const RadialProblem& problem, int n_r) {
    if (n_r < 0) throw DomainError("domain", "n_r must be nonnegative");
    const Shooter shooter(problem);
    const std::size_t n = shooter.size();
    const double W_inf = problem.potential().asymptotic_power_law();

    // Bracket by node counting: count(E) = number of levels below E.
    double E_lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n; ++i) E_lo = std::min(E_lo, 0.5 * shooter.q(i));
    double step = std::max(1.0, std::abs(E_lo)) * 1e-2;
    double E_hi = E_lo + step;
    while (shooter.outward_nodes(E_hi) < n_r + 1) {
        E_lo = E_hi;
        step *= 2.0;
        E_hi = E_lo + step;
        if (E_hi >= W_inf) {
            E_hi = W_inf;
            if (shooter.outward_nodes(E_hi) < n_r + 1) {
                std::ostringstream msg;
                // Still classically allowed at the wall: the box, not the potential, ran out of levels.
                if (0.5 * shooter.q(n - 1) < W_inf) {
                    msg << "grid too short: r_max=" << problem.grid().r_max
                        << " lies inside the classically allowed region at the continuum edge; increase r_max";
                    throw DomainError("grid_too_short", msg.str());
                }
                msg << "state not bound / bracket exhausted: fewer than " << n_r + 1
                    << " levels below the continuum for l'=" << problem.l_prime();
                throw DomainError("not_bound", msg.str());
            }
            break;
        }
        if (!std::isfinite(E_hi)) throw NumericalError("bracket_exhausted", "energy bracket diverged");
    }

    // Narrow until the bracket holds exactly this level.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (E_lo + E_hi);
        const int c = shooter.outward_nodes(mid);
        if (c <= n_r) E_lo = mid;
        else E_hi = mid;
        const bool isolated = shooter.outward_nodes(E_lo) == n_r;
        if (isolated && (E_hi - E_lo) < 1e-6 * std::max(1.0, std::abs(E_hi))) break;
    }

    const double E_mid = 0.5 * (E_lo + E_hi);
    const std::size_t m = shooter.turning_index(E_mid);
    const auto [end_raw, tail_S] = shooter.tail_end(m, E_mid);
    if (tail_S < min_tail_exponent) {
        std::ostringstream msg;
        msg << "grid too short: r_max=" << problem.grid().r_max << " cuts the decaying tail of level n_r=" << n_r
            << "; increase r_max";
        throw DomainError("grid_too_short", msg.str());
    }
    const std::size_t end = std::max(end_raw, m + 3);

    auto defect = [&](double E) { return shooter.shoot(E, m, end).defect; };
    double d_lo = defect(E_lo), d_hi = defect(E_hi);
    if ((d_lo < 0.0) == (d_hi < 0.0)) {
        // Fall back to pure node bisection to round-off.
        for (int it = 0; it < 200 && E_hi - E_lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(E_hi);
             ++it) {
            const double mid = 0.5 * (E_lo + E_hi);
            if (shooter.outward_nodes(mid) <= n_r) E_lo = mid;
            else E_hi = mid;
        }
        d_lo = defect(E_lo);
        d_hi = defect(E_hi);
    }

    // Illinois regula falsi on the matching defect.
    double E = E_mid;
    if ((d_lo < 0.0) != (d_hi < 0.0)) {
        int side = 0;
        for (int it = 0; it < 200; ++it) {
            E = (E_lo * d_hi - E_hi * d_lo) / (d_hi - d_lo);
            if (!(E > E_lo && E < E_hi)) E = 0.5 * (E_lo + E_hi);
            const double d = defect(E);
            if (d == 0.0) break;
            if ((d < 0.0) == (d_lo < 0.0)) {
                E_lo = E;
                d_lo = d;
                if (side == -1) d_hi *= 0.5;
                side = -1;
            } else {
                E_hi = E;
                d_hi = d;
                if (side == 1) d_lo *= 0.5;
                side = 1;
            }
            if (E_hi - E_lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(E))) break;
        }
    } else {
        E = 0.5 * (E_lo + E_hi);
    }

    if (E >= W_inf) {
        std::ostringstream msg;
        msg << "state not bound: level n_r=" << n_r << " lies at E=" << E << " above the continuum";
        throw DomainError("not_bound", msg.str());
    }

    const auto shot = shooter.shoot(E, m, end);
    EigenSolution sol;
    sol.n_r = n_r;
    sol.E = E;
    sol.l_prime = problem.l_prime();
    sol.n = wkb_quantum_number(problem.potential(), problem.l_prime(), n_r);
    sol.matching_defect = std::abs(shot.defect);
    sol.chi.grid = problem.grid();
    sol.chi.values.assign(n, 0.0);

    const std::size_t join = std::abs(shot.in[m]) > std::abs(shot.in[m + 1]) ? m : m + 1;
    const double scale = shot.out[join] / shot.in[join];
    for (std::size_t i = 0; i <= m; ++i) sol.chi.values[i] = shot.out[i];
    for (std::size_t i = m + 1; i <= end; ++i) sol.chi.values[i] = scale * shot.in[i];

    const double norm = l2_norm(sol.chi);
    for (double& v : sol.chi.values) v /= norm;

    const int nodes = count_nodes(sol.chi.values);
    if (nodes != n_r) {
        std::ostringstream msg;
        msg << "eigenfunction for n_r=" << n_r << " has " << nodes << " nodes";
        throw NumericalError("node_mismatch", msg.str());
    }
    return sol;
}

}  // namespace orbitkit
