#pragma once

// Staircase model complexes of L-space knots from Alexander data, plus the
// three-generator model complexes C_n and their duals.

#include <numeric>

#include "cfk/complex.hpp"

namespace cfk {

struct LSpaceKnotData {
    std::vector<int> exps;  // 0 < n_1 < ... < n_m

    explicit LSpaceKnotData(std::vector<int> e) : exps(std::move(e)) {
        if (exps.empty()) throw ComplexError("empty Alexander exponent list");
        int prev = 0;
        for (int n : exps) {
            if (n <= prev) throw ComplexError("Alexander exponents must be strictly increasing and positive");
            prev = n;
        }
        if (n_of_k() < 1) throw ComplexError("n(K) = 0 is not supported (unknot)");
    }

    int m() const { return int(exps.size()); }
    int genus() const { return exps.back(); }
    int n(int s) const { return s == 0 ? 0 : exps.at(s - 1); }  // n_0 = 0
    int ell(int s) const { return n(s) - n(s - 1); }

    // n(K) = n_m - n_{m-1} + ... ; the alternating sum from the top
    int n_of_k() const {
        int v = 0, sign = 1;
        for (int s = m(); s >= 1; --s) {
            v += sign * n(s);
            sign = -sign;
        }
        return v;
    }

    // L_s = ell_m + ell_{m-2} + ... + ell_{s+2}, for m - s even and >= 0
    int L(int s) const {
        int v = 0;
        for (int k = m(); k >= s + 2; k -= 2) v += ell(k);
        return v;
    }
};

// exponent sequence of the symmetrized Alexander polynomial of T(p,q),
// computed by exact power-series division of (t^{pq}-1)(t-1)/((t^p-1)(t^q-1))
inline LSpaceKnotData torus_alexander(int p, int q) {
    if (p < 2 || q < 2 || std::gcd(p, q) != 1)
        throw ComplexError("torus parameters must be coprime and >= 2");
    int dn = p * q + 1, dd = p + q;
    std::vector<long> num(dn + 1, 0), den(dd + 1, 0);
    num[0] = 1; num[1] = -1; num[p * q] = -1; num[p * q + 1] = 1;  // (t^{pq}-1)(t-1)
    den[0] = 1; den[p] = -1; den[q] = -1; den[p + q] = 1;          // (t^p-1)(t^q-1)
    int dq = dn - dd;  // = (p-1)(q-1) = 2g
    std::vector<long> quo(dq + 1, 0);
    for (int k = 0; k <= dq; ++k) {  // divide from the bottom
        long c = num[k];
        for (int i = 0; i < k; ++i)
            if (k - i <= dd) c -= quo[i] * den[k - i];
        quo[k] = c;  // den[0] == 1
    }
    int g = dq / 2;
    std::vector<int> exps;
    for (int k = dq; k > g; --k)
        if (quo[k] != 0) exps.push_back(k - g);
    std::sort(exps.begin(), exps.end());
    return LSpaceKnotData(exps);
}

// Staircase complex in the one-variable model, with the drawing data: the
// standard picture places x0 at (0,0) and alternates horizontal/vertical
// steps of lengths ell_k out to x^1_m at (-n(K), g - n(K)); branch 2 is the
// (i,j) mirror. Absolute Maslov gradings are normalized so that the homology
// of the {i = 0} column sits in degree 0.
struct StaircaseComplex {
    ChainComplex cx;
    LSpaceKnotData data;
    // generator order: x1_m .. x1_1, x0, x2_1 .. x2_m
    std::vector<std::pair<int, int>> std_pos;  // drawn positions
    std::vector<int> fig_maslov;               // Maslov labels of the drawn copy
    std::vector<int> flip_perm;                // branch swap
    std::vector<int> flip_exp;                 // U-power decorations of the flip

    int index_x1(int k) const { return data.m() - k; }          // x1_k, k = 1..m
    int index_x0() const { return data.m(); }
    int index_x2(int k) const { return data.m() + k; }          // x2_k, k = 1..m
    // x^t_0 := x0 for both branches
    int index_branch(int t, int k) const {
        if (k == 0) return index_x0();
        return t == 1 ? index_x1(k) : index_x2(k);
    }
};

inline StaircaseComplex staircase(const LSpaceKnotData& data) {
    const int m = data.m();
    const int nk = data.n_of_k();
    const int N = 2 * m + 1;
    std::vector<std::pair<int, int>> pos(N);
    std::vector<std::string> names(N);
    auto ix1 = [&](int k) { return m - k; };
    auto ix0 = m;
    auto ix2 = [&](int k) { return m + k; };
    names[ix0] = "x0";
    pos[ix0] = {0, 0};
    {
        int i = 0, j = 0;
        for (int k = 1; k <= m; ++k) {
            if ((m - k) % 2 == 0) i -= data.ell(k);  // horizontal step
            else j += data.ell(k);                   // vertical step
            pos[ix1(k)] = {i, j};
            pos[ix2(k)] = {j, i};
            names[ix1(k)] = "x1_" + std::to_string(k);
            names[ix2(k)] = "x2_" + std::to_string(k);
        }
    }
    // sources carry the odd Maslov value -2n(K)+1 along the drawn staircase
    auto is_source = [&](int idx) {
        if (idx == ix0) return m % 2 == 1;
        int k = idx < m ? m - idx : idx - m;
        return (m % 2 == 1) ? (k % 2 == 0) : (k % 2 == 1);
    };
    std::vector<Generator> gens(N);
    std::vector<int> fig(N);
    for (int idx = 0; idx < N; ++idx) {
        int md = -2 * nk + (is_source(idx) ? 1 : 0);
        int mu = md - 2 * pos[idx].first;  // undecorated representative
        int a = pos[idx].second - pos[idx].first;
        gens[idx] = Generator{names[idx], mu, mu - 2 * a};
        fig[idx] = md + 2 * nk;
    }
    std::vector<Arrow> arrows;
    auto arrow = [&](int from, int to) {
        int c = pos[from].first - pos[to].first;
        arrows.push_back({from, to, RingElement::monomial(Mode::local, c, c)});
    };
    if (m % 2 == 1) {
        arrow(ix0, ix1(1));
        arrow(ix0, ix2(1));
        for (int s = 2; s <= m - 1; s += 2)
            for (int t = 1; t <= 2; ++t) {
                int src = t == 1 ? ix1(s) : ix2(s);
                arrow(src, t == 1 ? ix1(s - 1) : ix2(s - 1));
                arrow(src, t == 1 ? ix1(s + 1) : ix2(s + 1));
            }
    } else {
        for (int t = 1; t <= 2; ++t) {
            arrow(t == 1 ? ix1(1) : ix2(1), ix0);
            arrow(t == 1 ? ix1(1) : ix2(1), t == 1 ? ix1(2) : ix2(2));
        }
        for (int s = 3; s <= m - 1; s += 2)
            for (int t = 1; t <= 2; ++t) {
                int src = t == 1 ? ix1(s) : ix2(s);
                arrow(src, t == 1 ? ix1(s - 1) : ix2(s - 1));
                arrow(src, t == 1 ? ix1(s + 1) : ix2(s + 1));
            }
    }
    StaircaseComplex S{ChainComplex(Mode::local, gens, arrows), data, pos, fig, {}, {}};
    S.flip_perm.resize(N);
    S.flip_exp.resize(N);
    for (int k = 1; k <= m; ++k) {
        S.flip_perm[ix1(k)] = ix2(k);
        S.flip_perm[ix2(k)] = ix1(k);
    }
    S.flip_perm[ix0] = ix0;
    for (int idx = 0; idx < N; ++idx)
        S.flip_exp[idx] = -S.cx.alex(idx);  // U^{-A} x^1 <-> x^2 preserves gradings
    return S;
}

inline StaircaseComplex staircase_torus(int p, int q) { return staircase(torus_alexander(p, q)); }

// three-generator model: dy1 = U^{n-1}V^n x0 + U^n V^{n-1} x1
inline ChainComplex cn_model(int n) {
    if (n < 1) throw ComplexError("cn_model needs n >= 1");
    std::vector<Generator> g{{"x0", -2, 0}, {"x1", 0, -2}, {"y1", -2 * n + 1, -2 * n + 1}};
    std::vector<Arrow> a{{2, 0, RingElement::monomial(Mode::poly, n - 1, n)},
                         {2, 1, RingElement::monomial(Mode::poly, n, n - 1)}};
    return ChainComplex(Mode::poly, g, a);
}

// dual model: dx0* = U^{n-1}V^n y1*, dx1* = U^n V^{n-1} y1*
inline ChainComplex cn_dual_model(int n) {
    if (n < 1) throw ComplexError("cn_dual_model needs n >= 1");
    std::vector<Generator> g{{"x0*", 2, 0}, {"x1*", 0, 2}, {"y1*", 2 * n - 1, 2 * n - 1}};
    std::vector<Arrow> a{{0, 2, RingElement::monomial(Mode::poly, n - 1, n)},
                         {1, 2, RingElement::monomial(Mode::poly, n, n - 1)}};
    return ChainComplex(Mode::poly, g, a);
}

}  // namespace cfk
