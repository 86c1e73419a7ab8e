#pragma once

// Chain-map searches. Grading forces each matrix entry to a single candidate
// monomial, so the chain-map equations are linear over F2; searches enumerate
// the solution space and filter by the nonlinear condition (invertibility,
// localized-homology isomorphism, kernel maximality).

#include <optional>

#include "cfk/homology.hpp"

namespace cfk {

struct MapSpace {
    const ChainComplex* C = nullptr;
    const ChainComplex* D = nullptr;
    std::vector<std::pair<int, int>> pairs;  // (x in C, y in D)
    std::vector<Mono> monos;                 // forced monomial per pair
    std::map<std::pair<int, int>, int> pair_idx;
    std::vector<F2Vec> basis;                // nullspace basis of the constraints

    static MapSpace build(const ChainComplex& C, const ChainComplex& D) {
        if (C.mode() != D.mode()) throw ComplexError("ring mode mismatch in map search");
        MapSpace M;
        M.C = &C;
        M.D = &D;
        for (int x = 0; x < C.size(); ++x)
            for (int y = 0; y < D.size(); ++y) {
                int du = D.gen(y).gr_u - C.gen(x).gr_u;
                int dv = D.gen(y).gr_v - C.gen(x).gr_v;
                if (du % 2 || dv % 2) continue;
                Mono m;
                if (C.mode() == Mode::poly) {
                    m = Mono{du / 2, dv / 2};
                    if (m.u < 0 || m.v < 0) continue;
                } else {
                    int c = du / 2;
                    if (c < 0 || C.alex(x) - D.alex(y) + c < 0) continue;
                    m = Mono{c, c};
                }
                M.pair_idx[{x, y}] = int(M.pairs.size());
                M.pairs.push_back({x, y});
                M.monos.push_back(m);
            }
        // chain-map equations, one per (x in C, z in D) with matching grading
        std::vector<F2Vec> rows;
        int n = int(M.pairs.size());
        for (int x = 0; x < C.size(); ++x)
            for (int z = 0; z < D.size(); ++z) {
                F2Vec row(n);
                bool any = false;
                for (const auto& [y, d] : C.col(x)) {
                    (void)d;
                    auto it = M.pair_idx.find({y, z});
                    if (it != M.pair_idx.end()) { row.flip(it->second); any = true; }
                }
                for (int y2 = 0; y2 < D.size(); ++y2) {
                    auto it = M.pair_idx.find({x, y2});
                    if (it == M.pair_idx.end()) continue;
                    if (D.col(y2).count(z)) { row.flip(it->second); any = true; }
                }
                if (any && !row.is_zero()) rows.push_back(row);
            }
        // nullspace of the row system = solution space
        std::vector<F2Vec> cols(n, F2Vec(int(rows.size())));
        for (int r = 0; r < int(rows.size()); ++r)
            for (int j = 0; j < n; ++j)
                if (rows[r].get(j)) cols[j].set(r, true);
        M.basis = nullspace_columns(cols);
        return M;
    }

    int unknowns() const { return int(pairs.size()); }
    int solution_dim() const { return int(basis.size()); }

    F2Vec solution(std::uint64_t k) const {
        F2Vec f(unknowns());
        for (int b = 0; b < solution_dim(); ++b)
            if ((k >> b) & 1) f ^= basis[b];
        return f;
    }

    Chain apply(const F2Vec& f, int x) const {
        Chain out;
        for (int p = 0; p < unknowns(); ++p) {
            if (!f.get(p) || pairs[p].first != x) continue;
            int y = pairs[p].second;
            RingElement m = RingElement::monomial(D->mode(), monos[p].u, monos[p].v);
            auto it = out.find(y);
            if (it == out.end()) out.emplace(y, m);
            else it->second = it->second + m;
        }
        return out;
    }

    // the degree-0 part: entries whose monomial is 1 (and, in one-variable
    // mode, that also preserve the Alexander filtration level)
    bool unit_part_invertible(const F2Vec& f) const {
        if (C->size() != D->size()) return false;
        int n = C->size();
        std::vector<F2Vec> cols(n, F2Vec(n));
        for (int p = 0; p < unknowns(); ++p) {
            if (!f.get(p)) continue;
            auto [x, y] = pairs[p];
            if (monos[p] != Mono{0, 0}) continue;
            if (C->mode() == Mode::local && C->alex(x) != D->alex(y)) continue;
            cols[x].set(y, true);
        }
        return rank_columns(cols) == n;
    }
};

// localized homology data of a poly complex at one bigrading parity class
struct LocSliceHomology {
    PolySlice above, here, below;
    LatticeHomology H;  // reused quotient machinery over the slice

    static LocSliceHomology at(const ChainComplex& C, int p, int q) {
        LocSliceHomology L;
        L.above = PolySlice::at(C, p + 1, q + 1, true);
        L.here = PolySlice::at(C, p, q, true);
        L.below = PolySlice::at(C, p - 1, q - 1, true);
        auto dout = poly_slice_boundary(C, L.here, L.below);
        auto din = poly_slice_boundary(C, L.above, L.here);
        LatticeHomology H;
        H.n = L.here.dim();
        H.boundaries = F2Span(H.n);
        for (const auto& b : din) H.boundaries.add(b);
        F2Span grown = H.boundaries;
        for (const auto& z : nullspace_columns(dout))
            if (grown.add(z)) H.reps.push_back(z);
        for (const auto& b : H.boundaries.rows()) feed(H, b, F2Vec(int(H.reps.size())));
        for (int r = 0; r < int(H.reps.size()); ++r) {
            F2Vec c(int(H.reps.size()));
            c.set(r, true);
            feed(H, H.reps[r], c);
        }
        L.H = std::move(H);
        return L;
    }

private:
    static void feed(LatticeHomology& H, F2Vec v, F2Vec coord) {
        for (size_t i = 0; i < H.ech.size(); ++i)
            if (v.get(H.pivots[i])) { v ^= H.ech[i]; coord ^= H.echc[i]; }
        int p = v.lowest_set();
        if (p < 0) return;
        H.ech.push_back(v);
        H.echc.push_back(coord);
        H.pivots.push_back(p);
    }
};

// Does the candidate f : C -> D induce an isomorphism on (UV)^-1 H_*?
// Checked parity class by parity class on localized slices.
inline bool induces_localized_iso(const MapSpace& M, const F2Vec& f) {
    const ChainComplex& C = *M.C;
    const ChainComplex& D = *M.D;
    ChainComplex Cp = C.mode() == Mode::poly ? C : C.convert_mode(Mode::poly);
    ChainComplex Dp = D.mode() == Mode::poly ? D : D.convert_mode(Mode::poly);
    std::set<std::pair<int, int>> parities;
    for (const auto& g : Cp.gens())
        parities.insert({((g.gr_u % 2) + 2) % 2, ((g.gr_v % 2) + 2) % 2});
    for (const auto& g : Dp.gens())
        parities.insert({((g.gr_u % 2) + 2) % 2, ((g.gr_v % 2) + 2) % 2});
    for (auto [p, q] : parities) {
        auto LC = LocSliceHomology::at(Cp, p, q);
        auto LD = LocSliceHomology::at(Dp, p, q);
        if (LC.H.dim() != LD.H.dim()) return false;
        if (LC.H.dim() == 0) continue;
        // slice matrix of f
        std::vector<F2Vec> cols;
        for (const auto& [g, m] : LC.here.elts) {
            F2Vec col(LD.here.dim());
            Chain img = M.apply(f, g);
            for (const auto& [y, coeff] : img)
                for (const auto& t : coeff.terms()) {
                    int j = LD.here.find(y, Mono{m.u + t.u, m.v + t.v});
                    if (j >= 0) col.flip(j);
                }
            cols.push_back(col);
        }
        std::vector<F2Vec> hcols;
        for (const auto& z : LC.H.reps) {
            F2Vec img(LD.here.dim());
            for (int e = 0; e < z.n; ++e)
                if (z.get(e)) img ^= cols[e];
            hcols.push_back(LD.H.coords(img));
        }
        if (rank_columns(hcols) != LC.H.dim()) return false;
    }
    return true;
}

inline constexpr int kDefaultIsoBound = 12;
inline constexpr int kSearchDimCap = 22;

// grading-preserving, ring-equivariant chain isomorphism search
inline bool is_isomorphic(const ChainComplex& C, const ChainComplex& D,
                          int bound = kDefaultIsoBound) {
    if (C.mode() != D.mode()) return false;
    if (C.size() != D.size()) return false;
    if (C.size() > bound) throw ComplexError("is_isomorphic size bound exceeded");
    // cheap reject: bigrading multisets must agree
    std::multiset<std::pair<int, int>> a, b;
    for (const auto& g : C.gens()) a.insert({g.gr_u, g.gr_v});
    for (const auto& g : D.gens()) b.insert({g.gr_u, g.gr_v});
    if (a != b) return false;
    MapSpace M = MapSpace::build(C, D);
    if (M.solution_dim() > kSearchDimCap)
        throw ComplexError("is_isomorphic search space too large");
    std::uint64_t total = std::uint64_t(1) << M.solution_dim();
    for (std::uint64_t k = 0; k < total; ++k) {
        F2Vec f = M.solution(k);
        if (M.unit_part_invertible(f)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// expressing chains in module bases

// coordinates of a homogeneous chain in the (p,q) slice of the free module
inline F2Vec chain_slice_coords(const ChainComplex& C, const PolySlice& s, const Chain& ch) {
    F2Vec v(s.dim());
    for (const auto& [g, coeff] : ch)
        for (const auto& t : coeff.terms()) {
            int j = s.find(g, t);
            if (j < 0) throw ComplexError("chain term outside slice");
            v.flip(j);
        }
    return v;
}

// Rewrites C in a full replacement basis (poly mode). Throws if the chains do
// not form a module basis or the differential is not expressible.
inline ChainComplex ChainComplex::rebase(const std::vector<std::pair<Generator, Chain>>& basis) const {
    if (mode_ != Mode::poly) throw ComplexError("rebase needs polynomial mode");
    if (int(basis.size()) != size()) throw ComplexError("rebase needs a full basis");
    const ChainComplex& work = *this;
    // unit-coefficient part must be invertible (graded Nakayama)
    {
        std::vector<F2Vec> cols;
        for (const auto& [g, ch] : basis) {
            F2Vec col(size());
            for (const auto& [i, coeff] : ch) {
                std::pair<int, int> gr{work.gen(i).gr_u, work.gen(i).gr_v};
                if (gr != std::pair<int, int>{g.gr_u, g.gr_v}) continue;
                for (const auto& t : coeff.terms())
                    if (t == Mono{0, 0}) col.flip(i);
            }
            cols.push_back(col);
        }
        if (rank_columns(cols) != size())
            throw ComplexError("replacement chains are not a module basis");
    }
    std::vector<Generator> gens;
    for (const auto& [g, ch] : basis) {
        auto gr = work.chain_grading(ch);
        if (gr != std::pair<int, int>{g.gr_u, g.gr_v})
            throw ComplexError("declared grading does not match chain " + g.name);
        gens.push_back(g);
    }
    std::vector<Arrow> arrows;
    for (int j = 0; j < int(basis.size()); ++j) {
        Chain dv = work.apply_diff(basis[j].second);
        if (dv.empty()) continue;
        auto gr = work.chain_grading(dv);
        PolySlice s = PolySlice::at(work, gr.first, gr.second, false);
        F2Vec target = chain_slice_coords(work, s, dv);
        // candidates: the forced monomial translate of each basis chain
        std::vector<F2Vec> cols;
        std::vector<std::pair<int, Mono>> cand;
        for (int l = 0; l < int(basis.size()); ++l) {
            int du = gens[l].gr_u - gr.first, dv2 = gens[l].gr_v - gr.second;
            if (du % 2 || dv2 % 2) continue;
            Mono m{du / 2, dv2 / 2};
            if (m.u < 0 || m.v < 0) continue;
            Chain scaled = chain_scale(RingElement::monomial(Mode::poly, m.u, m.v), basis[l].second);
            cols.push_back(chain_slice_coords(work, s, scaled));
            cand.push_back({l, m});
        }
        auto sol = solve_columns(cols, target);
        if (!sol) throw ComplexError("differential is not expressible in the replacement basis");
        for (int ci : *sol) {
            auto [l, m] = cand[ci];
            arrows.push_back({j, l, RingElement::monomial(Mode::poly, m.u, m.v)});
        }
    }
    return ChainComplex(Mode::poly, std::move(gens), arrows);
}

// Extracts a free basis for the graded submodule spanned by the given chains
// (poly mode), together with the induced differential. Throws if the span is
// not closed under the differential.
struct SubmoduleComplex {
    ChainComplex complex;
    std::vector<Chain> basis;
};

inline SubmoduleComplex extract_submodule(const ChainComplex& C, std::vector<Chain> chains,
                                          const std::string& prefix) {
    if (C.mode() != Mode::poly) throw ComplexError("extract_submodule needs polynomial mode");
    // drop zero chains, sort by grading (descending p+q then p) for Nakayama
    std::vector<std::pair<std::pair<int, int>, Chain>> work;
    for (auto& ch : chains)
        if (!ch.empty()) work.push_back({C.chain_grading(ch), std::move(ch)});
    std::stable_sort(work.begin(), work.end(), [](const auto& a, const auto& b) {
        int sa = a.first.first + a.first.second, sb = b.first.first + b.first.second;
        if (sa != sb) return sa > sb;
        return a.first.first > b.first.first;
    });
    std::vector<Chain> chosen;
    std::vector<std::pair<int, int>> chosen_gr;
    for (auto& [gr, ch] : work) {
        PolySlice s = PolySlice::at(C, gr.first, gr.second, false);
        F2Span sp(s.dim());
        for (int l = 0; l < int(chosen.size()); ++l) {
            int du = chosen_gr[l].first - gr.first, dv = chosen_gr[l].second - gr.second;
            if (du % 2 || dv % 2) continue;
            Mono m{du / 2, dv / 2};
            if (m.u < 0 || m.v < 0) continue;
            Chain scaled = chain_scale(RingElement::monomial(Mode::poly, m.u, m.v), chosen[l]);
            sp.add(chain_slice_coords(C, s, scaled));
        }
        F2Vec v = chain_slice_coords(C, s, ch);
        if (sp.add(v)) {
            chosen.push_back(ch);
            chosen_gr.push_back(gr);
        }
    }
    // induced differential
    std::vector<Generator> gens;
    for (int l = 0; l < int(chosen.size()); ++l)
        gens.push_back(Generator{prefix + std::to_string(l), chosen_gr[l].first, chosen_gr[l].second});
    std::vector<Arrow> arrows;
    for (int j = 0; j < int(chosen.size()); ++j) {
        Chain dv = C.apply_diff(chosen[j]);
        if (dv.empty()) continue;
        auto gr = C.chain_grading(dv);
        PolySlice s = PolySlice::at(C, gr.first, gr.second, false);
        F2Vec target = chain_slice_coords(C, s, dv);
        std::vector<F2Vec> cols;
        std::vector<std::pair<int, Mono>> cand;
        for (int l = 0; l < int(chosen.size()); ++l) {
            int du = chosen_gr[l].first - gr.first, dv2 = chosen_gr[l].second - gr.second;
            if (du % 2 || dv2 % 2) continue;
            Mono m{du / 2, dv2 / 2};
            if (m.u < 0 || m.v < 0) continue;
            cols.push_back(chain_slice_coords(C, s,
                chain_scale(RingElement::monomial(Mode::poly, m.u, m.v), chosen[l])));
            cand.push_back({l, m});
        }
        auto sol = solve_columns(cols, target);
        if (!sol) throw ComplexError("submodule is not closed under the differential");
        for (int ci : *sol) {
            auto [l, m] = cand[ci];
            arrows.push_back({j, l, RingElement::monomial(Mode::poly, m.u, m.v)});
        }
    }
    SubmoduleComplex out{ChainComplex(Mode::poly, std::move(gens), arrows), chosen};
    return out;
}

}  // namespace cfk
