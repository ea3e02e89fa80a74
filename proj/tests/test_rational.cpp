#include <cmath>
#include <numbers>

#include "doctest.h"
#include "orbitkit/rational.hpp"

using namespace orbitkit;

TEST_CASE("convergents of pi") {
    const auto c = convergents(std::numbers::pi, 200);
    REQUIRE(c.size() >= 4);
    CHECK(c[0] == Rational{3, 1});
    CHECK(c[1] == Rational{22, 7});
    CHECK(c[2] == Rational{333, 106});
    CHECK(c[3] == Rational{355, 113});
    for (const auto& r : c) CHECK(r.p <= 200);
}

TEST_CASE("convergents terminate on exact binary fractions") {
    const auto c = convergents(0.75, 64);
    REQUIRE_FALSE(c.empty());
    CHECK(c.back() == Rational{3, 4});
}

TEST_CASE("rational_within picks the smallest adequate denominator") {
    CHECK(rational_within(2.0 / 3, 1e-12, 64) == Rational{2, 3});
    CHECK(rational_within(0.5, 1e-12, 64) == Rational{1, 2});
    CHECK(rational_within(1.0, 1e-12, 64) == Rational{1, 1});
    CHECK(rational_within(2.0, 1e-12, 64) == Rational{2, 1});
    // pi/sqrt(2.5)/pi = 1/sqrt(2.5) is irrational; no small denominator fits tightly.
    CHECK_FALSE(rational_within(1 / std::sqrt(2.5), 1e-6, 64).has_value());
    // A loose tolerance accepts a coarse convergent.
    const auto loose = rational_within(std::numbers::pi, 2e-3, 64);
    REQUIRE(loose);
    CHECK(*loose == Rational{22, 7});
}

TEST_CASE("rational value") {
    CHECK(Rational{3, 4}.value() == 0.75);
}
