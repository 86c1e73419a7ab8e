#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cfk/ring.hpp"

using namespace cfk;

static RingElement mono(Mode m, int u, int v) { return RingElement::monomial(m, u, v); }

TEST_CASE("addition is characteristic 2") {
    auto a = mono(Mode::poly, 1, 0);
    REQUIRE((a + a).is_zero());

    auto uv = mono(Mode::poly, 1, 1);
    auto u2 = mono(Mode::poly, 2, 0);
    auto s = uv + u2;
    REQUIRE(s.term_count() == 2);

    // (U^{n-1}V^n + U^nV^{n-1}) + (U^{n-1}V^n) = U^nV^{n-1}, n = 2
    auto x = mono(Mode::poly, 1, 2) + mono(Mode::poly, 2, 1);
    auto y = x + mono(Mode::poly, 1, 2);
    REQUIRE(y == mono(Mode::poly, 2, 1));
}

TEST_CASE("multiplication") {
    REQUIRE(mono(Mode::poly, 1, 0) * mono(Mode::poly, 0, 1) == mono(Mode::poly, 1, 1));
    auto one_plus_u = RingElement::one(Mode::poly) + mono(Mode::poly, 1, 0);
    auto sq = one_plus_u * one_plus_u;
    REQUIRE(sq == RingElement::one(Mode::poly) + mono(Mode::poly, 2, 0));
    // (U^{n-1}V^n)(UV) with n = 3
    REQUIRE(mono(Mode::poly, 2, 3) * mono(Mode::poly, 1, 1) == mono(Mode::poly, 3, 4));
}

TEST_CASE("units") {
    REQUIRE(RingElement::one(Mode::poly).is_unit());
    REQUIRE_FALSE(mono(Mode::poly, 1, 0).is_unit());
    REQUIRE(mono(Mode::local, -1, -1).is_unit());
    REQUIRE(mono(Mode::local, 3, -2).is_unit());
    REQUIRE_FALSE((mono(Mode::local, 1, 1) + mono(Mode::local, 0, 0)).is_unit());
}

TEST_CASE("mode rules") {
    REQUIRE_THROWS_AS(mono(Mode::poly, -1, 0), RingError);
    REQUIRE_THROWS_AS(mono(Mode::poly, 1, 0) + mono(Mode::local, 1, 0), RingError);
    REQUIRE_THROWS_AS(mono(Mode::poly, 1, 0) * mono(Mode::local, 1, 0), RingError);
}

TEST_CASE("random algebra properties") {
    std::mt19937 rng(7);
    auto rnd = [&](Mode m) {
        std::uniform_int_distribution<int> nt(0, 4), ex(m == Mode::poly ? 0 : -5, 5);
        std::vector<Mono> ts;
        int k = nt(rng);
        for (int i = 0; i < k; ++i) ts.push_back(Mono{ex(rng), ex(rng)});
        return RingElement::from_terms(m, ts);
    };
    for (Mode m : {Mode::poly, Mode::local}) {
        for (int trial = 0; trial < 200; ++trial) {
            auto a = rnd(m), b = rnd(m), c = rnd(m);
            REQUIRE((a + a).is_zero());
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a * b == b * a);
            REQUIRE((a * b) * c == a * (b * c));
        }
    }
    // localized inverses
    std::uniform_int_distribution<int> ex(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = mono(Mode::local, ex(rng), ex(rng));
        REQUIRE(a * a.inverse() == RingElement::one(Mode::local));
    }
}

TEST_CASE("string round trip") {
    auto e = mono(Mode::poly, 2, 3) + mono(Mode::poly, 0, 0) + mono(Mode::poly, 1, 0);
    auto p = RingElement::parse(Mode::poly, e.str());
    REQUIRE(p == e);
    REQUIRE(RingElement::parse(Mode::poly, "0").is_zero());
    auto l = mono(Mode::local, -2, -2);
    REQUIRE(RingElement::parse(Mode::local, l.str()) == l);
    REQUIRE(RingElement::parse(Mode::poly, "U^2 V^3 + 1 + U") == e);
}
