#include <cmath>
#include <numbers>

#include "doctest.h"
#include "orbitkit/potential.hpp"
#include "support.hpp"

using namespace orbitkit;

TEST_CASE("evaluate: Coulomb, alkali and oscillator hand values") {
    auto c = evaluate({-1.0, -1.0, 0.0}, 2.0);
    CHECK(c.V == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(c.f == doctest::Approx(-0.25).epsilon(1e-15));

    auto k = evaluate(CombinedPotential::alkali(0.2), 1.0);
    CHECK(k.V == doctest::Approx(-1.2).epsilon(1e-15));
    CHECK(k.f == doctest::Approx(-1.4).epsilon(1e-15));

    auto h = evaluate({0.5, 2.0, 0.0}, 1.0, 1.0);
    CHECK(h.U_eff == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("force is minus the derivative of V; f' is the derivative of f") {
    for (auto p : {CombinedPotential(-1, -1, -0.2), CombinedPotential(0.5, 2, 1.5), CombinedPotential(2, 0.5, 0.3),
                   CombinedPotential(-1.5, -1.5, -0.1)}) {
        for (double r : {0.3, 1.0, 2.7}) {
            const double h = 1e-5 * r;
            const double dV = (p.value(r + h) - p.value(r - h)) / (2 * h);
            const double df = (p.force(r + h) - p.force(r - h)) / (2 * h);
            CHECK(p.force(r) == doctest::Approx(-dV).epsilon(1e-8));
            CHECK(p.force_derivative(r) == doctest::Approx(df).epsilon(1e-7));
            const double dW = (p.power_law(r + h) - p.power_law(r - h)) / (2 * h);
            CHECK(p.power_law_force(r) == doctest::Approx(-dW).epsilon(1e-8));
        }
    }
}

TEST_CASE("non-positive radius and degenerate parameters are rejected") {
    const CombinedPotential p(-1, -1, 0);
    CHECK(error_kind([&] { p.value(0.0); }) == "domain");
    CHECK(error_kind([&] { evaluate(p, -1.0); }) == "domain");
    CHECK(error_kind([] { CombinedPotential(0.0, 2.0, 0.0); }) == "degenerate_potential");
    CHECK(error_kind([] { CombinedPotential(1.0, 0.0, 0.0); }) == "degenerate_potential");
}

TEST_CASE("circular orbits: Coulomb, oscillator, alkali") {
    auto c = circular_orbit({-1, -1, 0}, 1.0);
    CHECK(c.r0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.E == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(c.stable);

    auto h = circular_orbit({0.5, 2, 0}, 1.0);
    CHECK(h.r0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.E == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.stable);

    // -r0 - 0.4 = -L^2 with L^2 = 1.6/3
    const double L = std::sqrt(8 * 0.2 / 3);
    auto k = circular_orbit(CombinedPotential::alkali(0.2), L);
    CHECK(k.r0 == doctest::Approx(2.0 / 15).epsilon(1e-12));
    CHECK(k.E == doctest::Approx(-3.75).epsilon(1e-12));
}

TEST_CASE("circular orbit residual and energy identity") {
    for (auto p : {CombinedPotential(-1, -1, -0.2), CombinedPotential(0.5, 2, 1.5), CombinedPotential(2, 0.5, 0.3),
                   CombinedPotential(-1, -1.5, 0.4), CombinedPotential(3, 3, -0.1)}) {
        for (double L : {0.8, 1.0, 2.5}) {
            auto c = circular_orbit(p, L);
            const double centripetal = L * L / std::pow(c.r0, 3);
            CHECK(std::abs(p.force(c.r0) + centripetal) < 1e-10 * centripetal);
            CHECK(c.E == L * L / (2 * c.r0 * c.r0) + p.value(c.r0));
            CHECK(c.stable);
        }
    }
}

TEST_CASE("circular orbit failures") {
    // L^2 + 2b <= 0 with an attractive Coulomb part: nothing stops the fall.
    CHECK(error_kind([] { circular_orbit({-1, -1, -1.0}, 1.0); }) == "fall_to_center");
    // Purely repulsive: no balance anywhere.
    CHECK(error_kind([] { circular_orbit({1, -1, 0.5}, 1.0); }) == "no_circular_orbit");
}

TEST_CASE("stability flag follows the sign of a nu (nu + 2)") {
    struct Case {
        double a, nu;
        bool stable;
    };
    for (auto [a, nu, stable] : {Case{-1, -1, true}, Case{1, 2, true}, Case{1, 0.5, true}, Case{-1, -0.5, true},
                                  Case{-1, -1.9, true}, Case{1, -1, false}, Case{-1, 2, false}, Case{1, -0.5, false},
                                  Case{-1, -3, false}, Case{1, -3, false}, Case{-1, -2.5, false}}) {
        for (double b : {0.0, -0.1, 0.7}) {
            const CombinedPotential p(a, nu, b);
            CHECK(p.admits_stable_circular_orbits() == stable);
            CHECK((error_kind([&] { p.require_stable(); }) == "") == stable);
        }
    }
}

TEST_CASE("shape indicators") {
    auto s = shape_indicators({-1, -1, 0}, 1.3);
    CHECK(s.beta_sq == 1.0);
    CHECK(s.kappa == 1.0);

    s = shape_indicators({0.5, 2, 0}, 0.7);
    CHECK(s.beta_sq == 4.0);
    CHECK(s.kappa == 1.0);
    CHECK(s.beta_kappa == 2.0);

    const double L = (2.0 / 3.0) * std::sqrt(6 * 0.2);
    s = shape_indicators(CombinedPotential::alkali(0.2), L);
    CHECK(s.kappa == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(error_kind([] { shape_indicators(CombinedPotential::alkali(0.2), 0.5); }) == "supercritical");
    CHECK(error_kind([] { shape_indicators({-1, -3, 0}, 1.0); }) == "unstable_family");
}

TEST_CASE("algebraic identities of beta and kappa") {
    for (double nu : {-1.5, -1.0, 0.5, 2.0, 3.0})
        for (double b : {-0.2, 0.0, 1.5})
            for (double L : {0.9, 1.7}) {
                auto s = shape_indicators({nu > 0 ? 1.0 : -1.0, nu, b}, L);
                CHECK(s.beta_sq == nu + 2);
                CHECK(s.kappa * s.kappa - 1 == doctest::Approx(2 * b / (L * L)).epsilon(1e-14).scale(1));
            }
}

TEST_CASE("angular momentum for a target kappa") {
    const auto alk = CombinedPotential::alkali(0.2);
    CHECK(angular_momentum_for_kappa(alk, 0.5) == doctest::Approx(std::sqrt(8.0 / 15)).epsilon(1e-14));
    CHECK(angular_momentum_for_kappa(alk, 2.0 / 3) == doctest::Approx(0.6 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(angular_momentum_for_kappa(alk, 0.75) == doctest::Approx(4.0 / 7 * std::sqrt(14 * 0.2)).epsilon(1e-14));
    CHECK(angular_momentum_for_kappa({0.5, 2, 1.5}, 2.0) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(error_kind([&] { angular_momentum_for_kappa(alk, 1.5); }) == "no_real_L");
    CHECK(error_kind([] { angular_momentum_for_kappa({-1, -1, 0}, 0.5); }) == "no_real_L");

    for (double kappa : {0.3, 0.5, 2.0 / 3, 0.75, 0.9}) {
        const double L = angular_momentum_for_kappa(alk, kappa);
        CHECK(shape_indicators(alk, L).kappa == doctest::Approx(kappa).epsilon(1e-12));
    }
}

TEST_CASE("turning points bracket the circular radius and sit on the energy surface") {
    const CombinedPotential p(-1, -1, -0.2);
    const double L = 0.9;
    const auto c = circular_orbit(p, L);
    const double E = 0.5 * c.E;
    const auto [r1, r2] = turning_points(p, L, E);
    CHECK(r1 < c.r0);
    CHECK(r2 > c.r0);
    CHECK(p.effective(r1, L) == doctest::Approx(E).epsilon(1e-12));
    CHECK(p.effective(r2, L) == doctest::Approx(E).epsilon(1e-12));

    CHECK(error_kind([&] { turning_points(p, L, 0.1); }) == "not_bound");
    CHECK(error_kind([&] { turning_points(p, L, c.E - 1.0); }) == "not_bound");
}
