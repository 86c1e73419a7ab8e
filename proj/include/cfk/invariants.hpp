#pragma once

// Concordance invariants from a reduced one-variable complex.
//
// With C+ = C{i >= 0} and the tower T = the stabilized image of
// H(C{i >= -N}) -> H(C+) (equal to the intersection of U^N HF+ for N >> 0
// once N clears the filtration spread),
//
//   tau = min { s : im( H(C{i=0, j<=s}) -> H(C+) ) meets T nontrivially }
//   nu  = min { s : im( H(C{max(i,j-s)=0}) -> H(C+) ) meets T nontrivially }
//   nu' = max { s : every class of H(C{i=0}) with nonzero tower image
//                   survives to H(C{min(i,j-s)=0}) }
//
// and epsilon is read from the trichotomy of (tau, nu, nu').

#include "cfk/homology.hpp"

namespace cfk {

struct Invariants {
    int tau = 0;
    int nu = 0;
    int nu_prime = 0;
    int epsilon = 0;
};

namespace detail {

struct TowerSetup {
    Lattice plus, col;
    LatticeHomology hplus, hcol;
    F2Span tower{0};
    std::vector<F2Vec> rho;  // H(col) -> H(plus)
    int window = 0;
};

inline TowerSetup tower_setup(const ChainComplex& C, int window) {
    TowerSetup T;
    T.window = window;
    int cw = window + (C.max_alex() - C.min_alex()) + 2;
    T.plus = Lattice::build(C, Region::band_i(0, window), -cw, cw);
    T.col = Lattice::build(C, Region::column(0), -cw, cw);
    Lattice big = Lattice::build(C, Region::band_i(-window, window), -cw, cw);
    T.hplus = LatticeHomology::of(T.plus);
    T.hcol = LatticeHomology::of(T.col);
    LatticeHomology hbig = LatticeHomology::of(big);
    auto f = lattice_map(big, T.plus);
    T.tower = F2Span(T.hplus.dim());
    for (const auto& v : homology_map(hbig, T.hplus, f)) T.tower.add(v);
    auto r = lattice_map(T.col, T.plus);
    T.rho = homology_map(T.hcol, T.hplus, r);
    return T;
}

inline bool image_meets_tower(const TowerSetup& T, const Lattice& src) {
    LatticeHomology hs = LatticeHomology::of(src);
    auto f = lattice_map(src, T.plus);
    F2Span img(T.hplus.dim());
    for (const auto& v : homology_map(hs, T.hplus, f)) img.add(v);
    return intersect(img, T.tower).dim() > 0;
}

inline Invariants invariants_once(const ChainComplex& C, int window) {
    TowerSetup T = tower_setup(C, window);
    int cw = window + (C.max_alex() - C.min_alex()) + 2;
    int slo = C.min_alex() - 1, shi = C.max_alex() + 1;
    Invariants out;

    bool found = false;
    for (int s = slo; s <= shi && !found; ++s) {
        Lattice colle = Lattice::build(C, Region::column_j_le(s), -cw, cw);
        if (image_meets_tower(T, colle)) { out.tau = s; found = true; }
    }
    if (!found) throw ComplexError("tau search failed; not a knot-type complex?");

    found = false;
    for (int s = slo; s <= shi && !found; ++s) {
        Lattice hook = Lattice::build(C, Region::hook_max_eq(s), -cw, cw);
        if (image_meets_tower(T, hook)) { out.nu = s; found = true; }
    }
    if (!found) throw ComplexError("nu search failed; not a knot-type complex?");

    // X0 = preimage of the tower in H(col)
    std::vector<F2Vec> modt;
    for (const auto& v : T.rho) modt.push_back(T.tower.reduce(v));
    std::vector<F2Vec> x0basis = nullspace_columns(modt);
    F2Span x0(T.hcol.dim());
    for (const auto& v : x0basis) x0.add(v);
    auto rho_of = [&](const F2Vec& x) {
        F2Vec img(T.hplus.dim());
        for (int k = 0; k < x.n; ++k)
            if (x.get(k)) img ^= T.rho[k];
        return img;
    };
    found = false;
    for (int s = shi; s >= slo && !found; --s) {
        Lattice vp = Lattice::build(C, Region::hook_min_eq(s), -cw, cw);
        LatticeHomology hvp = LatticeHomology::of(vp);
        auto f = lattice_map(T.col, vp);
        auto fm = homology_map(T.hcol, hvp, f);
        std::vector<F2Vec> cols;
        for (const auto& v : fm) cols.push_back(v);
        F2Span ker(T.hcol.dim());
        for (const auto& z : nullspace_columns(cols)) ker.add(z);
        F2Span bad = intersect(ker, x0);
        bool ok = true;
        for (const auto& z : bad.rows())
            if (!rho_of(z).is_zero()) { ok = false; break; }
        if (ok) { out.nu_prime = s; found = true; }
    }
    if (!found) throw ComplexError("nu' search failed; not a knot-type complex?");

    if (out.nu == out.tau + 1 && out.nu_prime == out.tau) out.epsilon = -1;
    else if (out.nu == out.tau && out.nu_prime == out.tau - 1) out.epsilon = 1;
    else if (out.nu == out.tau && out.nu_prime == out.tau) out.epsilon = 0;
    else throw ComplexError("(tau, nu, nu') violates the trichotomy");
    return out;
}

}  // namespace detail

// Computes tau, nu, nu', epsilon. Accepts poly-mode input (converted first)
// and unreduced input (reduced first). The window is the filtration spread
// plus a margin; stability is asserted by recomputing with a larger window.
inline Invariants invariants(const ChainComplex& input) {
    ChainComplex C = input.mode() == Mode::local ? input : input.convert_mode(Mode::local);
    C = C.reduce();
    if (C.size() == 0) throw ComplexError("invariants of an acyclic complex");
    int window = (C.max_alex() - C.min_alex()) + C.max_exponent() + 2;
    Invariants a = detail::invariants_once(C, window);
    Invariants b = detail::invariants_once(C, window + 2);
    if (a.tau != b.tau || a.nu != b.nu || a.nu_prime != b.nu_prime)
        throw ComplexError("invariant windows did not stabilize");
    return a;
}

inline int tau(const ChainComplex& C) { return invariants(C).tau; }
inline int nu(const ChainComplex& C) { return invariants(C).nu; }
inline int nu_prime(const ChainComplex& C) { return invariants(C).nu_prime; }
inline int epsilon(const ChainComplex& C) { return invariants(C).epsilon; }

// graded Euler characteristic of the hat levels (the Alexander polynomial)
inline std::map<int, int> alexander_from_complex(const ChainComplex& input) {
    ChainComplex C = input.mode() == Mode::local ? input : input.convert_mode(Mode::local);
    return euler_characteristic_polynomial(C);
}

inline std::string polynomial_str(const std::map<int, int>& poly) {
    if (poly.empty()) return "0";
    std::string s;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        auto [e, c] = *it;
        if (c == 0) continue;
        if (!s.empty()) s += c > 0 ? " + " : " - ";
        else if (c < 0) s += "-";
        int a = std::abs(c);
        if (a != 1 || e == 0) s += std::to_string(a);
        if (e != 0) {
            s += "t";
            if (e != 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

}  // namespace cfk
