#include <cmath>
#include <vector>

#include "doctest.h"
#include "orbitkit/ladder.hpp"
#include "support.hpp"

using namespace orbitkit;

namespace {

GridFunction sample(const RadialGrid& g, double (*f)(double)) {
    GridFunction out{g, std::vector<double>(g.n_points)};
    for (std::size_t i = 0; i < g.n_points; ++i) out.values[i] = f(g.r(i));
    return out;
}

double max_abs_diff(const GridFunction& f, double (*g)(double), std::size_t skip = 0) {
    double worst = 0;
    for (std::size_t i = skip; i + skip < f.values.size(); ++i)
        worst = std::max(worst, std::abs(f.values[i] - g(f.grid.r(i))));
    return worst;
}

double overlap_after_ladder(const CombinedPotential& p, int l, int n_r, LadderDirection dir) {
    const int target = dir == LadderDirection::up ? n_r + 1 : n_r - 1;
    const RadialProblem prob(p, l, std::max(n_r, target));
    const auto sol = solve_radial(prob, n_r);
    const auto res = apply_ladder(sol, factorize(p, sol.n), dir);
    REQUIRE_FALSE(res.annihilated);
    return std::abs(inner_product(res.chi, solve_radial(prob, target).chi));
}

}  // namespace

TEST_CASE("factorize: constants and branches") {
    auto h = factorize({0.5, 2, 0}, 2.0);
    CHECK(h.branch == LadderBranch::harmonic);
    CHECK(h.A == 2.5);
    CHECK(h.B == -3.5);
    CHECK(h.n_step == 2);
    CHECK(h.s_coefficient == 1.0);
    CHECK_FALSE(h.scaling_up);

    auto c = factorize({-1, -1, 0}, 1.0);
    CHECK(c.branch == LadderBranch::coulomb);
    CHECK(c.A == 0.0);
    CHECK(c.B == -1.0);
    CHECK(c.n_step == 1);
    CHECK(*c.scaling_up == 0.5);
    CHECK_FALSE(c.scaling_down);

    auto c3 = factorize({-2, -1, -0.2}, 3.0);
    CHECK(c3.s_coefficient == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(*c3.scaling_up == 0.75);
    CHECK(*c3.scaling_down == 1.5);

    for (double n : {0.75, 1.3, 2.0, 4.86}) {
        for (auto p : {CombinedPotential(0.5, 2, 0), CombinedPotential(-1, -1, 0)}) {
            const auto s = factorize(p, n);
            CHECK(s.A + s.B + 1 == 0.0);
        }
    }

    CHECK(error_kind([] { factorize({1, 1, 0}, 1.0); }) == "factorization_impossible");
    CHECK(error_kind([] { factorize({-1, -0.5, 0}, 1.0); }) == "factorization_impossible");
    CHECK(error_kind([] { factorize({-0.5, 2, 0}, 1.0); }) == "factorization_impossible");
}

TEST_CASE("scaling operator") {
    const RadialGrid g{1e-6, 30, 6001};
    const auto f = sample(g, [](double r) { return std::exp(-r); });
    const auto same = scaling_apply(1.0, f);
    for (std::size_t i = 0; i < g.n_points; ++i) CHECK(same.values[i] == doctest::Approx(f.values[i]).epsilon(1e-14));

    const auto twice = scaling_apply(2.0, f);
    CHECK(max_abs_diff(twice, [](double r) { return std::exp(-2 * r); }) < 1e-8);

    // Past r_max the decaying function counts as zero.
    const auto half = scaling_apply(0.5, f);
    CHECK(max_abs_diff(half, [](double r) { return std::exp(-r / 2); }) < 1e-8);
    const auto stretched = scaling_apply(4.0, f);
    CHECK(stretched.values.back() == 0.0);

    // Hydrogen 1s scaled by 1/2 carries the n = 2 envelope r e^{-r/2}.
    const auto h1 = sample(g, [](double r) { return 2 * r * std::exp(-r); });
    const auto h1s = scaling_apply(0.5, h1);
    CHECK(max_abs_diff(h1s, [](double r) { return r * std::exp(-r / 2); }) < 1e-8);
}

TEST_CASE("derivative stencils are fourth order") {
    double prev1 = 0, prev2 = 0;
    for (std::size_t n : {201, 401, 801}) {
        const RadialGrid g{0.5, 3.5, n};
        const auto f = sample(g, [](double r) { return std::sin(2 * r) * std::exp(-r); });
        const auto d1 = r_derivative(f);
        const auto d2 = second_derivative(f);
        double e1 = 0, e2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = g.r(i);
            const double fp = std::exp(-r) * (2 * std::cos(2 * r) - std::sin(2 * r));
            const double fpp = std::exp(-r) * (-3 * std::sin(2 * r) - 4 * std::cos(2 * r));
            e1 = std::max(e1, std::abs(d1.values[i] - r * fp));
            e2 = std::max(e2, std::abs(d2.values[i] - fpp));
        }
        if (prev1 > 0) {
            CHECK(prev1 / e1 > 12.0);
            CHECK(prev2 / e2 > 7.0);  // one-sided second-derivative ends are third order
        }
        prev1 = e1;
        prev2 = e2;
    }
}

TEST_CASE("oscillator ladder: n_r -> n_r +- 1 at fixed l'") {
    for (double b : {0.0, 1.5}) {
        const CombinedPotential p(0.5, 2, b);
        for (int nr = 0; nr <= 3; ++nr) {
            CAPTURE(b);
            CAPTURE(nr);
            CHECK(overlap_after_ladder(p, 1, nr, LadderDirection::up) >= 0.9999);
            if (nr > 0) CHECK(overlap_after_ladder(p, 1, nr, LadderDirection::down) >= 0.9999);
        }
    }
}

TEST_CASE("Coulomb ladder, including the b = -0.2 alkali case") {
    for (double b : {0.0, -0.2}) {
        const CombinedPotential p(-1, -1, b);
        for (int nr = 0; nr <= 3; ++nr) {
            CAPTURE(b);
            CAPTURE(nr);
            CHECK(overlap_after_ladder(p, 1, nr, LadderDirection::up) >= 0.9999);
            if (nr > 0) CHECK(overlap_after_ladder(p, 1, nr, LadderDirection::down) >= 0.9999);
        }
    }
}

TEST_CASE("lowering the ground state annihilates it") {
    for (auto [p, l] : {std::pair{CombinedPotential(-1, -1, 0), 0}, std::pair{CombinedPotential(0.5, 2, 0), 0},
                        std::pair{CombinedPotential(-1, -1, -0.2), 1}, std::pair{CombinedPotential(0.5, 2, 1.5), 2}}) {
        const RadialProblem prob(p, l, 1);
        const auto g = solve_radial(prob, 0);
        const auto res = apply_ladder(g, factorize(p, g.n), LadderDirection::down);
        CHECK(res.annihilated);
        CHECK(l2_norm(res.chi) == 0.0);
    }
    // Hydrogen 1s: the lowering operator kills it on the grid, not just by bookkeeping.
    const RadialProblem prob({-1, -1, 0}, 0, 1);
    const auto g = solve_radial(prob, 0);
    CHECK(apply_ladder(g, factorize({-1, -1, 0}, g.n), LadderDirection::down).raw_norm < 1e-8);
}

TEST_CASE("ladder output is normalized with a positive first lobe") {
    const CombinedPotential p(-1, -1, -0.2);
    const RadialProblem prob(p, 1, 3);
    const auto s = solve_radial(prob, 1);
    const auto res = apply_ladder(s, factorize(p, s.n), LadderDirection::up);
    CHECK(l2_norm(res.chi) == doctest::Approx(1.0).epsilon(1e-12));
    double peak = 0;
    for (double v : res.chi.values) peak = std::max(peak, std::abs(v));
    for (double v : res.chi.values)
        if (std::abs(v) > 1e-3 * peak) {
            CHECK(v > 0);
            break;
        }
}

TEST_CASE("factorization identity residuals on solved states") {
    for (auto [p, l] : {std::pair{CombinedPotential(0.5, 2, 0), 0}, std::pair{CombinedPotential(-1, -1, 0), 0},
                        std::pair{CombinedPotential(-1, -1, -0.2), 1}, std::pair{CombinedPotential(0.5, 2, 1.5), 1}}) {
        const RadialProblem prob(p, l, 3);
        for (int nr = 0; nr <= 3; ++nr) {
            const auto s = solve_radial(prob, nr);
            const auto r = verify_factorization_identity(s, factorize(p, s.n), p);
            CAPTURE(nr);
            CHECK(r.max() < 1e-5);
        }
    }
}

TEST_CASE("factorization residual shrinks at least as h^2") {
    for (auto p : {CombinedPotential(0.5, 2, 0), CombinedPotential(-1, -1, 0)}) {
        std::vector<double> res;
        const double r_max = p.nu() == 2 ? 9.0 : 40.0;
        for (std::size_t n : {1001, 2001, 4001}) {
            const RadialProblem prob(p, 0, RadialGrid{1e-6, r_max, n});
            const auto s = solve_radial(prob, 0);
            res.push_back(verify_factorization_identity(s, factorize(p, s.n), p).max());
        }
        for (std::size_t i = 1; i < res.size(); ++i) CHECK(std::log2(res[i - 1] / res[i]) >= 2.0);
    }
}

TEST_CASE("no angular-momentum ladder when b != 0") {
    for (int l = 0; l < 6; ++l) {
        const auto r = no_angular_ladder_check(0.0, l);
        CHECK(r.spacing == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.unit_spacing);
    }
    auto r = no_angular_ladder_check(-0.2, 1);
    CHECK(r.l_prime == doctest::Approx(0.86014705087).epsilon(1e-10));
    CHECK(r.l_prime_next == doctest::Approx(-0.5 + 2.5 * std::sqrt(1 - 0.4 / 6.25)).epsilon(1e-14));
    CHECK_FALSE(r.unit_spacing);
    CHECK_FALSE(no_angular_ladder_check(1.5, 0).unit_spacing);
    for (double b : {-0.1, 0.01, 0.5, 3.0})
        for (int l = 1; l < 6; ++l) CHECK(std::abs(no_angular_ladder_check(b, l).spacing - 1) > 1e-6);
}
