#pragma once

// The filtered mapping cone for +1 surgery on an L-space knot, and the
// reduced complex of the surgery dual knot.
//
// The cone X over a staircase C with genus g is built from copies A_s
// (s in [1-g, g]) and B_s (s in [2-g, g]) of C. An inner element at
// filtration (i,j) carries the cone bifiltration
//     I(A_s) = max(i, j-s),  J(A_s) = max(i+s-1, j),
//     I(B_s) = i,            J(B_s) = i+s-1,
// and the connecting maps are v_s = identity into B_s and h_s = flip followed
// by multiplication by U^s into B_{s+1}. Each cone generator is normalized to
// its I = 0 translate; the Maslov shifts of the copies are
//     sigma_A(s) = s(s-1),  sigma_B(s) = s(s-1) - 1,
// which pins the absolute grading (it reproduces d = -2 for +1 surgery on
// the right-handed trefoil).
//
// The reduced basis is constructed structurally: lower-corner generators
// g_j = (x^1_m)'_{j+1}, and per level at most one alpha and one beta upper
// corner whose A-copy part is the row/column survivor. Everything is then
// verified against the cone: the B-copy cancellation (all vertical arrows
// inside B-copies preserve both I and J) identifies every primed generator
// with a U-power of g, and d of every upper-corner chain must reduce to
// exactly the claimed two-term relation.

#include <sstream>

#include "cfk/homology.hpp"
#include "cfk/staircase.hpp"

namespace cfk {

struct FlipMap {
    std::vector<int> perm;
    std::vector<int> exp;  // f(x) = U^{exp[x]} perm[x]
};

// the canonical branch-swap flip of a staircase; checked to be a
// grading-preserving chain involution
inline FlipMap flip_map(const StaircaseComplex& S) {
    FlipMap f{S.flip_perm, S.flip_exp};
    const ChainComplex& C = S.cx;
    for (int x = 0; x < C.size(); ++x) {
        if (f.perm[f.perm[x]] != x || f.exp[f.perm[x]] + f.exp[x] != 0)
            throw ComplexError("flip is not an involution");
        if (C.gen(f.perm[x]).gr_u - 2 * f.exp[x] != C.gen(x).gr_u)
            throw ComplexError("flip is not grading-preserving");
        // chain map: flip(dx) == d(flip(x))
        std::map<std::pair<int, int>, int> lhs, rhs;
        for (const auto& [y, d] : C.col(x))
            lhs[{f.perm[y], d.single().u + f.exp[y]}] ^= 1;
        for (const auto& [y, d] : C.col(f.perm[x]))
            rhs[{y, d.single().u + f.exp[x]}] ^= 1;
        auto clean = [](std::map<std::pair<int, int>, int>& m) {
            for (auto it = m.begin(); it != m.end();)
                it = it->second == 0 ? m.erase(it) : std::next(it);
        };
        clean(lhs);
        clean(rhs);
        if (lhs != rhs) throw ComplexError("flip is not a chain map");
    }
    return f;
}

struct MappingCone {
    ChainComplex cx;
    struct Meta {
        bool isB = false;
        int s = 0;
        int inner = 0;
        int ihat = 0;
    };
    std::vector<Meta> meta;
    std::map<std::tuple<bool, int, int>, int> index;
    int genus = 0;
    int nk = 0;

    int at(bool isB, int s, int inner) const {
        auto it = index.find({isB, s, inner});
        if (it == index.end()) throw ComplexError("cone copy out of range");
        return it->second;
    }
};

inline int sigma_a(int s) { return s * (s - 1); }
inline int sigma_b(int s) { return s * (s - 1) - 1; }

inline MappingCone build_mapping_cone(const StaircaseComplex& S, const FlipMap& flip) {
    const ChainComplex& C = S.cx;
    const int g = S.data.genus();
    MappingCone X;
    X.genus = g;
    X.nk = S.data.n_of_k();
    std::vector<Generator> gens;
    auto add_gen = [&](bool isB, int s, int inner) {
        int A = C.alex(inner);
        int ihat = isB ? 0 : std::max(0, A - s);
        int level = isB ? s - 1 : std::max(s - 1, A) - ihat;
        int mu = C.gen(inner).gr_u + (isB ? sigma_b(s) : sigma_a(s)) - 2 * ihat;
        std::string nm = (isB ? "B" : "A") + std::to_string(s) + ":" + C.gen(inner).name;
        X.index[{isB, s, inner}] = int(gens.size());
        X.meta.push_back({isB, s, inner, ihat});
        gens.push_back(Generator{nm, mu, mu - 2 * level});
    };
    for (int s = 1 - g; s <= g; ++s)
        for (int k = 0; k < C.size(); ++k) add_gen(false, s, k);
    for (int s = 2 - g; s <= g; ++s)
        for (int k = 0; k < C.size(); ++k) add_gen(true, s, k);

    std::vector<Arrow> arrows;
    auto U = [&](int c) { return RingElement::monomial(Mode::local, c, c); };
    for (int s = 1 - g; s <= g; ++s) {
        for (int x = 0; x < C.size(); ++x) {
            int ax = X.at(false, s, x);
            // internal differential of A_s
            for (const auto& [y, d] : C.col(x)) {
                int c = d.single().u + X.meta[ax].ihat - X.meta[X.at(false, s, y)].ihat;
                arrows.push_back({ax, X.at(false, s, y), U(c)});
            }
            // v_s : identity into B_s
            if (s >= 2 - g)
                arrows.push_back({ax, X.at(true, s, x), U(X.meta[ax].ihat)});
            // h_s : flip then U^s into B_{s+1}
            if (s <= g - 1)
                arrows.push_back({ax, X.at(true, s + 1, flip.perm[x]),
                                  U(std::max(0, s - C.alex(x)))});
        }
    }
    for (int s = 2 - g; s <= g; ++s)
        for (int x = 0; x < C.size(); ++x)
            for (const auto& [y, d] : C.col(x))
                arrows.push_back({X.at(true, s, x), X.at(true, s, y), d});
    X.cx = ChainComplex(Mode::local, std::move(gens), arrows);
    return X;
}

// hat-flavor piece at one Alexander level: the {I = 0, J = level} slice
inline ChainComplex hat_summand(const MappingCone& X, int level) {
    if (level < -X.genus || level > X.genus)
        throw ComplexError("hat level out of range");
    return subquotient(X.cx, Region::level(level));
}

inline std::map<int, int> hat_dims(const MappingCone& X) {
    return hat_hfk_dims(X.cx);
}

// ---------------------------------------------------------------------------
// the structured reduced basis

struct DualGen {
    enum Kind { G = 0, Beta = 1, Alpha = 2 };
    Kind kind = G;
    int level = 0;
    int maslov = 0;
    std::string name;
    std::vector<std::pair<int, int>> chain;  // (cone gen, U-exponent)
    std::vector<std::pair<int, int>> dinf;   // (target level, U-exponent) on g's
};

struct SurgeryDual {
    StaircaseComplex stair;
    MappingCone cone;
    std::vector<DualGen> table;
    ChainComplex reduced;          // structured basis
    ChainComplex machine_reduced;  // generic cancellation of the cone
};

namespace detail {

// vertical structure of a staircase: each source has a unit-coefficient
// (vertical) target and a positive-exponent (horizontal) target
struct VerticalData {
    std::vector<int> vsource;   // per target-type gen: its vertical source, else -1
    std::vector<int> vtarget;   // per source: vertical target, else -1
    std::vector<int> htarget;   // per source: horizontal target, else -1
    std::vector<int> hexp;      // per source: horizontal exponent
    std::vector<bool> is_source;
};

inline VerticalData vertical_data(const ChainComplex& C) {
    VerticalData V;
    int n = C.size();
    V.vsource.assign(n, -1);
    V.vtarget.assign(n, -1);
    V.htarget.assign(n, -1);
    V.hexp.assign(n, 0);
    V.is_source.assign(n, false);
    for (int x = 0; x < n; ++x) {
        if (C.col(x).empty()) continue;
        V.is_source[x] = true;
        if (C.col(x).size() != 2) throw ComplexError("staircase source without two targets");
        for (const auto& [y, d] : C.col(x)) {
            int c = d.single().u;
            if (c == 0) {
                if (V.vsource[y] != -1) throw ComplexError("generator with two vertical arrows in");
                V.vsource[y] = x;
                V.vtarget[x] = y;
            } else {
                V.htarget[x] = y;
                V.hexp[x] = c;
            }
        }
        if (V.vtarget[x] < 0 || V.htarget[x] < 0)
            throw ComplexError("staircase source lacks a vertical or horizontal arrow");
    }
    return V;
}

// exponent w with (kappa)' == U^w (x^1_m)' modulo the B-copy cancellation
inline std::vector<int> identification_exponents(const StaircaseComplex& S, const VerticalData& V) {
    int n = S.cx.size();
    int top = S.index_x1(S.data.m());
    std::vector<int> w(n, 0);
    std::vector<int> seen(n, 0);
    std::vector<int> state(n, 0);
    std::function<int(int)> ident = [&](int k) -> int {
        if (k == top) return 0;
        if (V.is_source[k]) throw ComplexError("identification of a cancelled generator");
        if (state[k] == 1) throw ComplexError("identification cycle");
        if (seen[k]) return w[k];
        state[k] = 1;
        int sigma = V.vsource[k];
        if (sigma < 0) throw ComplexError("no vertical source for " + S.cx.gen(k).name);
        int res = V.hexp[sigma] + ident(V.htarget[sigma]);
        state[k] = 2;
        seen[k] = 1;
        w[k] = res;
        return res;
    };
    for (int k = 0; k < n; ++k)
        if (!V.is_source[k]) {
            int res = ident(k);
            // cross-check against the grading bookkeeping
            if (res != -S.cx.gen(k).gr_u / 2)
                throw ComplexError("identification exponent mismatch for " + S.cx.gen(k).name);
        }
    return w;
}

// chain arithmetic on (cone gen, exponent) pairs over F2
using ConeChain = std::set<std::pair<int, int>>;

inline void chain_xor(ConeChain& c, std::pair<int, int> t) {
    auto it = c.find(t);
    if (it == c.end()) c.insert(t);
    else c.erase(it);
}

inline ConeChain cone_diff(const MappingCone& X, const ConeChain& c) {
    ConeChain out;
    for (const auto& [g, e] : c)
        for (const auto& [y, d] : X.cx.col(g)) chain_xor(out, {y, e + d.single().u});
    return out;
}

// rewrite every B-copy term as a U-power of the surviving (x^1_m)' generator
inline ConeChain reduce_primes(const MappingCone& X, const StaircaseComplex& S,
                               const VerticalData& V, const std::vector<int>& w, ConeChain c) {
    int top = S.index_x1(S.data.m());
    ConeChain out;
    for (const auto& [ge, e] : c) {
        const auto& mt = X.meta[ge];
        if (!mt.isB) {
            chain_xor(out, {ge, e});
            continue;
        }
        if (V.is_source[mt.inner]) continue;  // cancelled pair generator
        chain_xor(out, {X.at(true, mt.s, top), e + w[mt.inner]});
    }
    return out;
}

}  // namespace detail

inline SurgeryDual surgery_dual_complex(const LSpaceKnotData& data) {
    SurgeryDual out{staircase(data), {}, {}, {}, {}};
    const StaircaseComplex& S = out.stair;
    out.cone = build_mapping_cone(S, flip_map(S));
    const MappingCone& X = out.cone;
    const ChainComplex& C = S.cx;
    const int g = data.genus();
    const int m = data.m();

    detail::VerticalData V = detail::vertical_data(C);
    std::vector<int> w = detail::identification_exponents(S, V);
    int top = S.index_x1(m);

    // lower corner generators
    std::map<int, DualGen> gs;
    for (int j = 1 - g; j <= g - 1; ++j) {
        DualGen d;
        d.kind = DualGen::G;
        d.level = j;
        d.name = "g" + std::to_string(j);
        int cg = X.at(true, j + 1, top);
        d.maslov = X.cx.gen(cg).gr_u;
        d.chain = {{cg, 0}};
        gs[j] = d;
    }

    // upper corner generators
    std::vector<DualGen> uppers;
    auto push_upper = [&](DualGen::Kind kind, int j, int copy_s, int kappa) {
        int ag = X.at(false, copy_s, kappa);
        if ((X.cx.gen(ag).gr_u - X.cx.gen(ag).gr_v) / 2 != j)
            throw ComplexError("upper corner generator at unexpected level");
        DualGen d;
        d.kind = kind;
        d.level = j;
        d.maslov = X.cx.gen(ag).gr_u;
        d.name = (kind == DualGen::Beta ? "beta" : "alpha") + std::to_string(j);
        d.chain = {{ag, 0}};
        // partner: the B-copy source whose vertical target is the connecting
        // image (flip(kappa) for beta, kappa itself for alpha)
        int image = kind == DualGen::Beta ? S.flip_perm[kappa] : kappa;
        bool have_partner = kind == DualGen::Beta ? (j <= g - 1) : (j >= 1 - g);
        if (have_partner) {
            int sigma = V.vsource[image];
            if (sigma < 0) throw ComplexError("no partner source for upper corner generator");
            int bg = X.at(true, j + 1, sigma);
            int e2 = (X.cx.gen(bg).gr_u - d.maslov) / 2;
            d.chain.push_back({bg, e2});
        }
        // d-infinity, computed in the cone and reduced mod the B cancellation
        detail::ConeChain ch(d.chain.begin(), d.chain.end());
        detail::ConeChain red = detail::reduce_primes(X, S, V, w, detail::cone_diff(X, ch));
        for (const auto& [cg2, e] : red) {
            const auto& mt = X.meta[cg2];
            if (mt.isB && mt.inner == top) {
                d.dinf.push_back({mt.s - 1, e});
                continue;
            }
            throw ComplexError("differential of " + d.name + " does not reduce to lower corners");
        }
        std::sort(d.dinf.begin(), d.dinf.end(),
                  [](const auto& a, const auto& b) {
                      return a.second != b.second ? a.second < b.second : a.first < b.first;
                  });
        // expected pattern and grading-forced exponents
        std::vector<int> expect;
        if (kind == DualGen::Beta) {
            if (j - 1 >= 1 - g) expect.push_back(j - 1);
            if (j <= g - 1) expect.push_back(j);
        } else {
            if (j >= 1 - g) expect.push_back(j);
            if (j + 1 <= g - 1) expect.push_back(j + 1);
        }
        std::vector<int> got;
        for (const auto& [lvl, e] : d.dinf) {
            got.push_back(lvl);
            if (2 * e != gs.at(lvl).maslov - d.maslov + 1)
                throw ComplexError("differential exponent of " + d.name + " is not grading-forced");
        }
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        if (got != expect)
            throw ComplexError("differential pattern of " + d.name + " unexpected");
        uppers.push_back(std::move(d));
    };

    for (int j = std::max(0, 1 - g); j <= g; ++j) {  // beta, top half
        int t = -1;
        for (int k = 0; k <= m; ++k)
            if (data.n(k) >= j) { t = k; break; }
        if (t < 0 || t % 2 != m % 2) continue;
        push_upper(DualGen::Beta, j, j, S.index_branch(1, t));
    }
    for (int j = -1; j >= 1 - g; --j) {  // beta, bottom half
        int t = -1;
        for (int k = m; k >= 0; --k)
            if (data.n(k) <= -j) { t = k; break; }
        if (t < 0 || t % 2 != m % 2) continue;
        push_upper(DualGen::Beta, j, j, S.index_branch(2, t));
    }
    for (int j = 0; j <= g - 1; ++j) {  // alpha, top half
        int t = -1;
        for (int k = m; k >= 0; --k)
            if (data.n(k) <= j) { t = k; break; }
        if (t < 0 || t % 2 != m % 2) continue;
        push_upper(DualGen::Alpha, j, j + 1, S.index_branch(1, t));
    }
    for (int j = -1; j >= -g; --j) {  // alpha, bottom half
        int t = -1;
        for (int k = 0; k <= m; ++k)
            if (data.n(k) >= -j) { t = k; break; }
        if (t < 0 || t % 2 != m % 2) continue;
        push_upper(DualGen::Alpha, j, j + 1, S.index_branch(2, t));
    }

    // assemble rows: level descending, then g < beta < alpha
    for (const auto& [j, d] : gs) out.table.push_back(d);
    for (auto& d : uppers) out.table.push_back(std::move(d));
    std::sort(out.table.begin(), out.table.end(), [](const DualGen& a, const DualGen& b) {
        if (a.level != b.level) return a.level > b.level;
        return a.kind < b.kind;
    });

    // the structured reduced complex
    std::map<int, int> g_index;
    std::vector<Generator> gens;
    for (int i = 0; i < int(out.table.size()); ++i) {
        const DualGen& d = out.table[i];
        if (d.kind == DualGen::G) g_index[d.level] = i;
        gens.push_back(Generator{d.name, d.maslov, d.maslov - 2 * d.level});
    }
    std::vector<Arrow> arrows;
    for (int i = 0; i < int(out.table.size()); ++i)
        for (const auto& [lvl, e] : out.table[i].dinf)
            arrows.push_back({i, g_index.at(lvl), RingElement::monomial(Mode::local, e, e)});
    out.reduced = ChainComplex(Mode::local, gens, arrows);

    // cross-checks against the cone
    std::map<int, int> struct_dims;
    for (const auto& d : out.table) struct_dims[d.level]++;
    if (hat_dims(X) != struct_dims)
        throw ComplexError("structured basis does not match the hat homology dimensions");
    out.machine_reduced = X.cx.reduce();
    if (out.machine_reduced.size() != out.reduced.size())
        throw ComplexError("cancellation reduction disagrees with the structured basis");
    std::multiset<std::pair<int, int>> ma, mb;
    for (const auto& gn : out.machine_reduced.gens()) mb.insert({gn.alex(), gn.gr_u});
    for (const auto& gn : out.reduced.gens()) ma.insert({gn.alex(), gn.gr_u});
    if (ma != mb)
        throw ComplexError("cancellation reduction gradings disagree with the structured basis");
    return out;
}

inline SurgeryDual surgery_dual_torus(int p, int q) {
    return surgery_dual_complex(torus_alexander(p, q));
}

// text table: Alexander gr. | generator | Maslov gr. | d-infinity
inline std::string emit_table(const SurgeryDual& D, bool with_chains = false) {
    std::ostringstream os;
    os << "Alexander  Generator  Maslov  d_inf";
    if (with_chains) os << "  chain";
    os << "\n";
    for (const auto& d : D.table) {
        std::ostringstream rel;
        if (d.dinf.empty()) rel << "0";
        bool first = true;
        for (const auto& [lvl, e] : d.dinf) {
            if (!first) rel << " + ";
            first = false;
            if (e == 1) rel << "U ";
            else if (e != 0) rel << "U^" << e << " ";
            rel << "g" << lvl;
        }
        os << d.level << "  " << d.name << "  " << d.maslov << "  " << rel.str();
        if (with_chains) {
            os << "  ";
            bool f2 = true;
            for (const auto& [cg, e] : d.chain) {
                if (!f2) os << " + ";
                f2 = false;
                if (e == 1) os << "U ";
                else if (e != 0) os << "U^" << e << " ";
                os << "(" << D.cone.cx.gen(cg).name << ")";
            }
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace cfk
