#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "orbitkit/closure.hpp"
#include "support.hpp"

using namespace orbitkit;
constexpr double pi = std::numbers::pi;

namespace {

OrbitTrajectory to_pericenters(const CombinedPotential& p, double L, double E, std::size_t count) {
    IntegrationOptions opt;
    opt.max_pericenters = count;
    opt.record_states = false;
    return integrate_orbit(p, pericenter_start(p, L, E), INFINITY, opt);
}

}  // namespace

TEST_CASE("apsidal angle of Kepler ellipses is 2 pi") {
    const CombinedPotential p(-1, -1, 0);
    for (double E : {-0.45, -0.3, -0.1}) {
        const auto a = apsidal_angle(to_pericenters(p, 1.0, E, 5));
        CHECK(a.mean == doctest::Approx(2 * pi).epsilon(1e-6));
        CHECK(a.spread < 1e-6);
        CHECK(a.intervals == 4);
    }
}

TEST_CASE("apsidal angle of the alkali kappa = 1/2 family is 4 pi") {
    const auto p = CombinedPotential::alkali(0.2);
    const double L = angular_momentum_for_kappa(p, 0.5);
    const double E_circ = circular_orbit(p, L).E;
    for (double f : {0.9, 0.5, 0.2}) CHECK(apsidal_angle(to_pericenters(p, L, f * E_circ, 4)).mean ==
                                           doctest::Approx(4 * pi).epsilon(1e-6));
}

TEST_CASE("oscillator: successive apsides are pi/2 apart") {
    const CombinedPotential p(0.5, 2, 0);
    const double L = 1.0;
    const double E = circular_orbit(p, L).E * 1.001;  // near circular
    const auto a = apsidal_angle(to_pericenters(p, L, E, 4));
    // Pericenter to pericenter spans two apsidal intervals.
    CHECK(a.mean / 2 == doctest::Approx(pi / 2).epsilon(1e-4));
}

TEST_CASE("near-circular apsidal angle is 2 pi / (beta kappa)") {
    // Small-oscillation limit for a generic exponent and b != 0.
    const CombinedPotential p(1, 0.5, 0.3);
    const double L = 1.1;
    const auto s = shape_indicators(p, L);
    const double E = circular_orbit(p, L).E;
    const auto a = apsidal_angle(to_pericenters(p, L, E + 1e-8 * std::abs(E), 4));
    CHECK(a.mean == doctest::Approx(2 * pi / s.beta_kappa).epsilon(1e-4));
}

TEST_CASE("too few pericenters") {
    OrbitTrajectory t;
    t.pericenters = {{0, 0, 1}, {1, 6, 1}};
    CHECK(error_kind([&] { apsidal_angle(t); }) == "insufficient_oscillations");
}

TEST_CASE("closure of the alkali kappa = 2/3 and 3/4 families") {
    const auto p = CombinedPotential::alkali(0.2);
    struct Case {
        double kappa;
        std::int64_t q, p;
    };
    for (auto [kappa, q, pp] : {Case{0.5, 1, 2}, Case{2.0 / 3, 2, 3}, Case{0.75, 3, 4}}) {
        const double L = angular_momentum_for_kappa(p, kappa);
        const double E = 0.5 * circular_orbit(p, L).E;
        const auto r = closure_analysis(p, L, E, 1e-6, 64);
        CHECK(r.kappa == doctest::Approx(kappa).epsilon(1e-12));
        CHECK(r.beta == 1.0);
        REQUIRE(r.rational);
        CHECK(r.rational->q == q);
        CHECK(r.rational->p == pp);
        CHECK(r.closed);
        CHECK(r.period_revolutions == pp);
        CHECK(*r.numeric_gap < 1e-5);
    }
}

TEST_CASE("Kepler orbits close after one revolution") {
    const CombinedPotential p(-1, -1, 0);
    for (double E : {-0.4, -0.2}) {
        const auto r = closure_analysis(p, 1.0, E);
        REQUIRE(r.rational);
        CHECK(*r.rational == Rational{1, 1});
        CHECK(r.closed);
        CHECK(r.period_revolutions == 1);
    }
}

TEST_CASE("generic alkali angular momentum does not close") {
    const auto p = CombinedPotential::alkali(0.2);
    const double L = 0.913;  // kappa irrational to working precision
    const auto r = closure_analysis(p, L, 0.5 * circular_orbit(p, L).E);
    CHECK_FALSE(r.closed);
}

TEST_CASE("closed implies rational present and a small gap") {
    const auto p = CombinedPotential::alkali(0.2);
    for (double L : {0.75, 0.8, 0.85, 0.9, 1.0, 1.2}) {
        const auto r = closure_analysis(p, L, 0.6 * circular_orbit(p, L).E);
        if (r.closed) {
            REQUIRE(r.rational);
            REQUIRE(r.numeric_gap);
            CHECK(*r.numeric_gap < 1e-5);
        }
    }
}

TEST_CASE("closure analysis of an unbound state") {
    const auto p = CombinedPotential::alkali(0.2);
    CHECK(error_kind([&] { closure_analysis(p, 0.9, 0.5); }) == "not_bound");
}

TEST_CASE("phase gap is scale free") {
    OrbitState a, b;
    a.r = 2.0;
    a.L = 3.0;
    b = a;
    b.r = 2.2;
    b.p_r = 0.15;
    CHECK(phase_gap(a, b) == doctest::Approx(std::hypot(0.1, 0.1)).epsilon(1e-14));
}

TEST_CASE("orbit_for_eccentricity realizes the requested apsides") {
    for (auto p : {CombinedPotential(-1, -1, 0), CombinedPotential(0.5, 2, 0), CombinedPotential(1, 3, 0.2)}) {
        for (double e : {0.1, 0.3, 0.6}) {
            const auto [L, E] = orbit_for_eccentricity(p, 1.0, e);
            const auto [r1, r2] = turning_points(p, L, E);
            CHECK(r1 == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(r2 == doctest::Approx((1 + e) / (1 - e)).epsilon(1e-10));
        }
    }
}

TEST_CASE("Bertrand scan flags exactly the Coulomb and oscillator exponents") {
    const std::vector<double> nus = {-1.5, -1, -0.5, 1, 2, 3};
    const std::vector<double> ecc = {0.1, 0.3, 0.6};
    ScanOptions opt;
    opt.threads = 4;
    const auto scan = bertrand_scan(nus, ecc, 0.0, opt);
    CHECK(scan.closed_exponents() == std::vector<double>{-1, 2});
    CHECK(scan.samples.size() == nus.size() * ecc.size());
    for (const auto& v : scan.verdicts) {
        if (v.nu == -1) CHECK(*v.angle_over_pi == Rational{2, 1});
        if (v.nu == 2) CHECK(*v.angle_over_pi == Rational{1, 1});
    }
}

TEST_CASE("Bertrand scan results do not depend on the thread count") {
    const std::vector<double> nus = {-1, 0.5, 2};
    const std::vector<double> ecc = {0.2, 0.5};
    ScanOptions serial;
    ScanOptions parallel = serial;
    parallel.threads = 3;
    const auto a = bertrand_scan(nus, ecc, 0.0, serial);
    const auto b = bertrand_scan(nus, ecc, 0.0, parallel);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].apsidal_angle == b.samples[i].apsidal_angle);
}

TEST_CASE("nu = 0.5 near circularity: apsidal angle 2 pi / sqrt(2.5), not closed") {
    const std::vector<double> nus = {0.5};
    const std::vector<double> ecc = {1e-4};
    const auto scan = bertrand_scan(nus, ecc, 0.0);
    CHECK(scan.samples[0].apsidal_angle == doctest::Approx(2 * pi / std::sqrt(2.5)).epsilon(1e-6));
    CHECK_FALSE(rational_within(scan.samples[0].apsidal_angle / pi, 1e-6, 64).has_value());
}

TEST_CASE("scan rejects unstable exponents") {
    const std::vector<double> nus = {-3};
    const std::vector<double> ecc = {0.3};
    CHECK(error_kind([&] { bertrand_scan(nus, ecc, 0.0); }) == "unstable_potential");
}
