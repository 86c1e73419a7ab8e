#include <catch2/catch_amalgamated.hpp>

#include "cfk/concordance.hpp"
#include "cfk/invariants.hpp"
#include "cfk/staircase.hpp"
#include "cfk/surgery.hpp"

using namespace cfk;

static ChainComplex unknot_like() {
    return ChainComplex(Mode::local, {Generator{"u", 0, 0}}, {});
}

TEST_CASE("unknot-like complex") {
    auto I = invariants(unknot_like());
    REQUIRE(I.tau == 0);
    REQUIRE(I.nu == 0);
    REQUIRE(I.nu_prime == 0);
    REQUIRE(I.epsilon == 0);
}

TEST_CASE("positive staircases") {
    auto S = staircase_torus(2, 3);
    auto I = invariants(S.cx);
    REQUIRE(I.tau == 1);
    REQUIRE(I.nu == 1);
    REQUIRE(I.nu_prime == 0);
    REQUIRE(I.epsilon == 1);

    REQUIRE(tau(staircase_torus(3, 5).cx) == 4);     // tau = g for an L-space knot
    REQUIRE(epsilon(staircase_torus(3, 5).cx) == 1);

    // dual negates tau and epsilon
    auto D = S.cx.dual();
    REQUIRE(tau(D) == -1);
    REQUIRE(epsilon(D) == -1);
}

TEST_CASE("model complexes C_n") {
    for (int n = 2; n <= 3; ++n) {
        auto I = invariants(cn_model(n));
        REQUIRE(I.tau == 1);
        REQUIRE(I.epsilon == 0);
        REQUIRE(I.nu == 1);
        REQUIRE(I.nu_prime == 1);
        auto J = invariants(cn_dual_model(n));
        REQUIRE(J.tau == -1);
        REQUIRE(J.epsilon == 0);
    }
    // n = 1 is the trefoil: epsilon = 1
    REQUIRE(epsilon(cn_model(1)) == 1);
    REQUIRE(epsilon(cn_dual_model(1)) == -1);
}

TEST_CASE("surgery duals") {
    for (int q : {7, 11}) {
        auto D = surgery_dual_torus(2, q);
        auto I = invariants(D.reduced);
        REQUIRE(I.tau == -1);
        REQUIRE(I.nu == -1);
        REQUIRE(I.nu_prime == -1);
        REQUIRE(I.epsilon == 0);
        // machine reduction gives the same values
        auto J = invariants(D.machine_reduced);
        REQUIRE(I.tau == J.tau);
        REQUIRE(I.nu == J.nu);
        REQUIRE(I.nu_prime == J.nu_prime);
    }
    auto D35 = surgery_dual_torus(3, 5);
    auto I = invariants(D35.reduced);
    REQUIRE(I.tau == -1);
    REQUIRE(I.nu == -1);
    REQUIRE(I.nu_prime == -1);
    REQUIRE(I.epsilon == 0);
    // the trefoil dual (n = 1) has epsilon = -1 instead
    auto D23 = surgery_dual_torus(2, 3);
    REQUIRE(tau(D23.reduced) == -1);
    REQUIRE(epsilon(D23.reduced) == -1);
}

TEST_CASE("invariance under reduction, basis change, and box summands") {
    auto S = staircase_torus(2, 7);
    auto I0 = invariants(S.cx);
    // add a box summand
    std::vector<Generator> bg{{"p", 0, 0}, {"q", -1, -1}};
    ChainComplex box(Mode::local, bg, {{0, 1, RingElement::monomial(Mode::local, 0, 0)}});
    auto I1 = invariants(S.cx.direct_sum(box));
    REQUIRE(I0.tau == I1.tau);
    REQUIRE(I0.nu == I1.nu);
    REQUIRE(I0.nu_prime == I1.nu_prime);
    REQUIRE(I0.epsilon == I1.epsilon);
    // filtered change of basis
    auto D = surgery_dual_torus(2, 7);
    int c = (D.reduced.gen(D.reduced.find("beta3")).gr_u -
             D.reduced.gen(D.reduced.find("alpha1")).gr_u) / 2;
    auto moved = D.reduced.change_basis(
        {{D.reduced.find("alpha1"), D.reduced.find("beta3"),
          RingElement::monomial(Mode::local, c, c)}});
    auto I2 = invariants(moved);
    REQUIRE(I2.tau == -1);
    REQUIRE(I2.epsilon == 0);
}

TEST_CASE("additivity on tensor products") {
    auto tre = staircase_torus(2, 3).cx;
    REQUIRE(tau(tre.tensor(tre)) == 2);
    auto c2 = cn_model(2).convert_mode(Mode::local);
    auto c3 = cn_model(3).convert_mode(Mode::local);
    REQUIRE(tau(c2.tensor(c3)) == 2);
    REQUIRE(tau(c2.tensor(cn_dual_model(3).convert_mode(Mode::local))) == 0);
    REQUIRE(tau(tre.tensor(c2)) == 2);
}

TEST_CASE("epsilon merge rules over the model family") {
    auto c2 = cn_model(2).convert_mode(Mode::local);
    auto c3 = cn_model(3).convert_mode(Mode::local);
    auto c2d = cn_dual_model(2).convert_mode(Mode::local);
    // epsilon(C) = epsilon(D) implies epsilon(C tensor D) = epsilon(C)
    REQUIRE(epsilon(c2.tensor(c3)) == 0);
    // epsilon(C) = 0 implies epsilon(C tensor D) = epsilon(D)
    auto tre = staircase_torus(2, 3).cx;
    REQUIRE(epsilon(c2.tensor(tre)) == 1);
    REQUIRE(epsilon(c2d.tensor(tre)) == 1);
}

TEST_CASE("epsilon-zero duals fail the one-dimensional vertical certificate") {
    // tau = -1 with epsilon = 0 obstructs local equivalence to a complex of a
    // knot in the three-sphere: the connected complex has vertical homology
    // of dimension > 1
    for (int q : {7, 11}) {
        auto D = surgery_dual_torus(2, q);
        auto conn = split_acyclic(D.reduced).conn;
        REQUIRE(vertical_homology_dim(conn.convert_mode(Mode::poly)) > 1);
    }
    // while honest knot complexes pass it
    REQUIRE(vertical_homology_dim(staircase_torus(3, 5).cx.convert_mode(Mode::poly)) == 1);
    REQUIRE(vertical_homology_dim(cn_model(1)) == 1);
}

TEST_CASE("alexander polynomial from a complex") {
    auto poly = alexander_from_complex(staircase_torus(2, 7).cx);
    std::map<int, int> want{{3, 1}, {2, -1}, {1, 1}, {0, -1}, {-1, 1}, {-2, -1}, {-3, 1}};
    REQUIRE(poly == want);
    REQUIRE(polynomial_str(poly) == "t^3 - t^2 + t - 1 + t^-1 - t^-2 + t^-3");
    REQUIRE(alexander_from_complex(unknot_like()) == std::map<int, int>{{0, 1}});
}
