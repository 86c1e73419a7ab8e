#include <catch2/catch_amalgamated.hpp>

#include "cfk/homology.hpp"
#include "cfk/iso.hpp"
#include "cfk/serialization.hpp"

using namespace cfk;

static RingElement P(int u, int v) { return RingElement::monomial(Mode::poly, u, v); }
static RingElement L(int c) { return RingElement::monomial(Mode::local, c, c); }

// the right-handed trefoil complex over F[U,V]: dx = Uy + Vz
static ChainComplex trefoil_poly() {
    std::vector<Generator> g{{"y", 0, -2}, {"x", -1, -1}, {"z", -2, 0}};
    std::vector<Arrow> a{{1, 0, P(1, 0)}, {1, 2, P(0, 1)}};
    return ChainComplex(Mode::poly, g, a);
}

// same complex in the one-variable filtered model
static ChainComplex trefoil_local() {
    std::vector<Generator> g{{"y", 0, -2}, {"x", -1, -1}, {"z", -2, 0}};
    std::vector<Arrow> a{{1, 0, L(1)}, {1, 2, L(0)}};
    return ChainComplex(Mode::local, g, a);
}

TEST_CASE("construction and validation") {
    REQUIRE(trefoil_poly().verify_d_squared());
    REQUIRE(trefoil_local().verify_d_squared());
    REQUIRE(ChainComplex::zero(Mode::poly).size() == 0);

    // da = b, db = a is rejected
    std::vector<Generator> g{{"a", 0, 0}, {"b", -1, -1}};
    REQUIRE_THROWS_AS(ChainComplex(Mode::poly, g,
                                   {{0, 1, P(0, 0)}, {1, 0, P(0, 0)}}),
                      ComplexError);
    // grading-incompatible arrow
    REQUIRE_THROWS_AS(ChainComplex(Mode::poly, g, {{0, 1, P(1, 0)}}), ComplexError);
    // non-filtered arrow in one-variable mode
    std::vector<Generator> h{{"a", 0, 0}, {"b", 1, -1}};
    REQUIRE_THROWS_AS(ChainComplex(Mode::local, h, {{0, 1, L(-1)}}), ComplexError);
}

TEST_CASE("tensor basics") {
    auto C = trefoil_poly();
    std::vector<Generator> tg{{"1", 0, 0}};
    ChainComplex triv(Mode::poly, tg, {});
    auto T = C.tensor(triv);
    REQUIRE(T.size() == C.size());
    REQUIRE(is_isomorphic(T, C));

    auto TT = C.tensor(C);
    REQUIRE(TT.size() == 9);
    REQUIRE(TT.verify_d_squared());
    // Kunneth over the localized ring: rank multiplies
    REQUIRE(localized_homology_rank(TT) == 1);
    REQUIRE(localized_homology_rank(C) == 1);
}

TEST_CASE("dual") {
    auto C = trefoil_poly();
    auto DD = C.dual().dual();
    REQUIRE(is_isomorphic(DD, C));
    REQUIRE(localized_homology_rank(C.dual()) == localized_homology_rank(C));
    REQUIRE(ChainComplex::zero(Mode::poly).dual().size() == 0);
}

TEST_CASE("reduce") {
    // already reduced complexes are fixed points
    auto C = trefoil_local();
    auto R = C.reduce();
    REQUIRE(R == C);

    // a unit arrow cancels to the zero complex
    std::vector<Generator> g{{"a", 0, 0}, {"b", -1, -1}};
    ChainComplex D(Mode::local, g, {{0, 1, L(0)}});
    REQUIRE(D.reduce().size() == 0);

    // reduction reroutes through the cancelled pair and keeps homology
    std::vector<Generator> g3{{"a", 0, 0}, {"c", 0, 0}, {"b", -1, -1}};
    ChainComplex E(Mode::local, g3, {{0, 2, L(0)}, {1, 2, L(0)}});
    auto ER = E.reduce();
    REQUIRE(ER.size() == 1);
    REQUIRE(localized_homology_rank(E) == localized_homology_rank(ER));
}

TEST_CASE("change of basis") {
    auto C = trefoil_local();
    REQUIRE(C.change_basis({}) == C);

    // adding a lower-filtration multiple commutes with reduce up to isomorphism
    std::vector<Generator> g{{"a", 0, 0}, {"b", 0, -2}, {"p", -1, 1}, {"q", -1, -1}};
    ChainComplex D(Mode::local, g, {{0, 2, L(0)}, {1, 3, L(0)}});
    ChainComplex::BasisMove mv{1, 0, L(0)};  // b += a, a sits at lower filtration
    auto D2 = D.change_basis({mv});
    REQUIRE(D2.verify_d_squared());
    REQUIRE(is_isomorphic(D.reduce(), D2.reduce(), 12));

    // non-filtered move rejected
    ChainComplex::BasisMove bad{0, 1, L(0)};  // a += b raises the j-filtration
    REQUIRE_THROWS_AS(D.change_basis({bad}), ComplexError);
}

TEST_CASE("subquotient") {
    auto C = trefoil_local();
    auto col = subquotient(C, Region::column(0));
    REQUIRE(col.size() == 3);
    int arrows = 0;
    for (int x = 0; x < col.size(); ++x) arrows += int(col.col(x).size());
    REQUIRE(arrows == 1);  // only the vertical arrow x -> z survives

    REQUIRE_THROWS_AS(subquotient(C, Region{"bad", [](int i, int j) { return i * i + j * j == 4; }}),
                      ComplexError);
}

TEST_CASE("convert mode round trip") {
    auto C = trefoil_poly();
    auto L1 = C.convert_mode(Mode::local);
    REQUIRE(L1 == trefoil_local());
    REQUIRE(L1.convert_mode(Mode::poly) == C);
}

TEST_CASE("is_isomorphic basics") {
    auto C = trefoil_poly();
    REQUIRE(is_isomorphic(C, C));
    std::vector<Generator> g{{"a", 0, 0}};
    ChainComplex one(Mode::poly, g, {});
    REQUIRE_FALSE(is_isomorphic(C, one));
}

TEST_CASE("homology cross-check on subquotient lattices") {
    auto C = trefoil_local();
    for (int s = -2; s <= 2; ++s) {
        Lattice hook = Lattice::build(C, Region::hook_max_eq(s), -6, 6);
        REQUIRE(hook.d_squared_zero());
        REQUIRE(hook.homology_dims_by_rank() == hook.homology_dims_by_cancellation());
    }
}

TEST_CASE("tensor is associative and commutative up to isomorphism") {
    std::vector<Generator> g{{"a", 0, 0}, {"b", -1, -1}};
    ChainComplex B(Mode::poly, g, {{0, 1, P(0, 0)}});
    auto C = trefoil_poly();
    REQUIRE(is_isomorphic(C.tensor(B), B.tensor(C), 12));
    std::vector<Generator> tg{{"1", 0, 0}};
    ChainComplex triv(Mode::poly, tg, {});
    REQUIRE(is_isomorphic(C.tensor(B).tensor(triv), C.tensor(B.tensor(triv)), 12));
}

TEST_CASE("serialization round trip") {
    auto C = trefoil_poly();
    REQUIRE(is_isomorphic(complex_from_json(to_json(C)), C));
    auto L1 = trefoil_local();
    REQUIRE(complex_from_json(to_json(L1)) == L1);
    // loader re-validates
    auto j = to_json(L1);
    j["generators"][0]["gr_u"] = 5;
    REQUIRE_THROWS_AS(complex_from_json(j), ComplexError);
}

TEST_CASE("graded homology table") {
    REQUIRE(graded_homology_table(ChainComplex::zero(Mode::poly)).empty());
    auto C = trefoil_poly();
    auto t = graded_homology_table(C);
    // the undecorated cycles y and z survive at their gradings
    REQUIRE(t.at({0, -2}) == 1);
    REQUIRE(t.at({-2, 0}) == 1);
    REQUIRE(t.count({-1, -1}) == 0);
    // local mode reports the two stable parity dims
    auto tl = graded_homology_table(trefoil_local());
    int total = 0;
    for (auto& [k, v] : tl) total += v;
    REQUIRE(total == localized_homology_rank(trefoil_local()));
}

TEST_CASE("subquotient of the full region is the window of translates") {
    auto C = trefoil_local();
    auto all = subquotient(C, Region::everything());
    REQUIRE(all.size() % C.size() == 0);
    REQUIRE(all.size() > C.size());
    REQUIRE(all.verify_d_squared());
}
