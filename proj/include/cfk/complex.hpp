#pragma once

// Finitely generated chain complexes over the two coefficient rings.
//
// A generator carries the bigrading (gr_u, gr_v); the Alexander grading is
// A = (gr_u - gr_v)/2. The differential is a sparse matrix of ring elements,
// entry col(x)[y] = coefficient of y in dx.
//
// poly mode  : bigraded complexes over F[U,V]. Every monomial U^a V^b in
//              col(x)[y] must satisfy gr_u(y) - 2a = gr_u(x) - 1 and
//              gr_v(y) - 2b = gr_v(x) - 1 (U drops gr_u by 2, V drops gr_v
//              by 2, the differential drops both gradings by 1). This forces
//              at most one monomial per entry and preserves A.
//
// local mode : the one-variable filtered model. Generators sit at filtration
//              (0, alex()); U^c translates sit at (-c, alex-c). Differential
//              entries are diagonal monomials U^c = (c,c) with
//              gr_u(y) - 2c = gr_u(x) - 1, and must be filtered:
//              c >= 0 and alex(x) - alex(y) + c >= 0.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfk/ring.hpp"

namespace cfk {

struct ComplexError : std::runtime_error {
    explicit ComplexError(const std::string& s) : std::runtime_error(s) {}
};

struct Generator {
    std::string name;
    int gr_u = 0;
    int gr_v = 0;
    int alex() const { return (gr_u - gr_v) / 2; }
};

struct Arrow {
    int from = 0;  // source generator index
    int to = 0;    // target generator index
    RingElement coeff;
};

// module element: generator index -> coefficient
using Chain = std::map<int, RingElement>;

class ChainComplex {
public:
    ChainComplex() : mode_(Mode::poly) {}

    ChainComplex(Mode mode, std::vector<Generator> gens, const std::vector<Arrow>& arrows)
        : mode_(mode), gens_(std::move(gens)), cols_(gens_.size()) {
        for (const auto& a : arrows) add_coeff(a.from, a.to, a.coeff);
        validate();
    }

    static ChainComplex zero(Mode m) { return ChainComplex(m, {}, {}); }

    Mode mode() const { return mode_; }
    int size() const { return int(gens_.size()); }
    const Generator& gen(int i) const { return gens_.at(i); }
    const std::vector<Generator>& gens() const { return gens_; }
    int alex(int i) const { return gens_.at(i).alex(); }
    const std::map<int, RingElement>& col(int x) const { return cols_.at(x); }

    int find(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (gens_[i].name == name) return i;
        throw ComplexError("no generator named " + name);
    }

    bool verify_d_squared() const {
        for (int x = 0; x < size(); ++x) {
            Chain dd = apply_diff(apply_diff(unit_chain(x)));
            if (!dd.empty()) return false;
        }
        return true;
    }

    Chain unit_chain(int x) const {
        Chain c;
        c[x] = RingElement::one(mode_);
        return c;
    }

    Chain apply_diff(const Chain& c) const {
        Chain out;
        for (const auto& [x, coeff] : c) {
            for (const auto& [y, d] : cols_.at(x)) {
                RingElement t = coeff * d;
                auto it = out.find(y);
                if (it == out.end()) out.emplace(y, t);
                else {
                    it->second = it->second + t;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
        return out;
    }

    // bigrading of a homogeneous chain; throws if mixed
    std::pair<int, int> chain_grading(const Chain& c) const {
        bool have = false;
        std::pair<int, int> gr{0, 0};
        for (const auto& [x, coeff] : c) {
            for (const auto& t : coeff.terms()) {
                std::pair<int, int> g{gens_[x].gr_u - 2 * t.u, gens_[x].gr_v - 2 * t.v};
                if (!have) { gr = g; have = true; }
                else if (g != gr) throw ComplexError("chain is not grading-homogeneous");
            }
        }
        if (!have) throw ComplexError("zero chain has no grading");
        return gr;
    }

    int max_exponent() const {
        int e = 1;
        for (int x = 0; x < size(); ++x)
            for (const auto& [y, d] : cols_[x])
                for (const auto& t : d.terms()) {
                    if (t.u > e) e = t.u;
                    if (t.v > e) e = t.v;
                }
        return e;
    }

    int min_alex() const {
        int a = 0;
        for (int i = 0; i < size(); ++i) a = std::min(a, alex(i));
        return a;
    }
    int max_alex() const {
        int a = 0;
        for (int i = 0; i < size(); ++i) a = std::max(a, alex(i));
        return a;
    }

    ChainComplex tensor(const ChainComplex& other) const {
        if (mode_ != other.mode_) throw ComplexError("ring mode mismatch in tensor");
        std::vector<Generator> gens;
        gens.reserve(size() * other.size());
        auto pid = [&](int i, int j) { return i * other.size() + j; };
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < other.size(); ++j)
                gens.push_back(Generator{gens_[i].name + "|" + other.gens_[j].name,
                                         gens_[i].gr_u + other.gens_[j].gr_u,
                                         gens_[i].gr_v + other.gens_[j].gr_v});
        std::vector<Arrow> arrows;
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < other.size(); ++j) {
                for (const auto& [y, d] : cols_[i])
                    arrows.push_back({pid(i, j), pid(y, j), d});
                for (const auto& [y, d] : other.cols_[j])
                    arrows.push_back({pid(i, j), pid(i, y), d});
            }
        return ChainComplex(mode_, std::move(gens), arrows);
    }

    ChainComplex dual() const {
        std::vector<Generator> gens;
        for (const auto& g : gens_)
            gens.push_back(Generator{g.name + "*", -g.gr_u, -g.gr_v});
        std::vector<Arrow> arrows;
        for (int x = 0; x < size(); ++x)
            for (const auto& [y, d] : cols_[x])
                arrows.push_back({y, x, d});
        return ChainComplex(mode_, std::move(gens), arrows);
    }

    ChainComplex direct_sum(const ChainComplex& other) const {
        if (mode_ != other.mode_) throw ComplexError("ring mode mismatch in direct sum");
        std::vector<Generator> gens = gens_;
        std::set<std::string> used;
        for (const auto& g : gens) used.insert(g.name);
        for (auto g : other.gens_) {
            while (used.count(g.name)) g.name += "'";
            used.insert(g.name);
            gens.push_back(g);
        }
        std::vector<Arrow> arrows;
        for (int x = 0; x < size(); ++x)
            for (const auto& [y, d] : cols_[x]) arrows.push_back({x, y, d});
        for (int x = 0; x < other.size(); ++x)
            for (const auto& [y, d] : other.cols_[x])
                arrows.push_back({x + size(), y + size(), d});
        return ChainComplex(mode_, std::move(gens), arrows);
    }

    // uniform Maslov shift (adds delta to both gradings, preserving alex)
    ChainComplex shift(int delta) const {
        std::vector<Generator> gens = gens_;
        for (auto& g : gens) { g.gr_u += delta; g.gr_v += delta; }
        std::vector<Arrow> arrows;
        for (int x = 0; x < size(); ++x)
            for (const auto& [y, d] : cols_[x]) arrows.push_back({x, y, d});
        return ChainComplex(mode_, std::move(gens), arrows);
    }

    // poly <-> local translation. A poly term U^a V^b becomes the diagonal
    // monomial U^a (the i-drop); the j-drop is recovered from the Alexander
    // gradings. Alexander homogeneity makes this lossless in both directions.
    ChainComplex convert_mode(Mode target) const {
        if (target == mode_) return *this;
        std::vector<Arrow> arrows;
        for (int x = 0; x < size(); ++x)
            for (const auto& [y, d] : cols_[x]) {
                for (const auto& t : d.terms()) {
                    Mono m;
                    if (target == Mode::local) {
                        m = Mono{t.u, t.u};
                    } else {
                        int b = alex(x) - alex(y) + t.u;
                        if (t.u < 0 || b < 0)
                            throw ComplexError("complex is not liftable to polynomial mode");
                        m = Mono{t.u, b};
                    }
                    arrows.push_back({x, y, RingElement::monomial(target, m.u, m.v)});
                }
            }
        return ChainComplex(target, gens_, arrows);
    }

    // Cancellation: repeatedly remove a filtration-preserving unit arrow,
    // rerouting through the cancelled pair. Deterministic scan order:
    // source index ascending, then target index ascending.
    ChainComplex reduce() const {
        std::vector<std::map<int, RingElement>> cols = cols_;
        std::vector<bool> alive(size(), true);
        auto eligible = [&](int x, int y, const RingElement& d) {
            if (!d.is_monomial()) return false;
            Mono m = d.single();
            if (mode_ == Mode::poly) return m == Mono{0, 0};
            return m == Mono{0, 0} && alex(x) == alex(y);
        };
        while (true) {
            int cx = -1, cy = -1;
            for (int x = 0; x < size() && cx < 0; ++x) {
                if (!alive[x]) continue;
                for (const auto& [y, d] : cols[x]) {
                    if (!alive[y] || d.is_zero()) continue;
                    if (eligible(x, y, d)) { cx = x; cy = y; break; }
                }
            }
            if (cx < 0) break;
            // reroute: for w with y in dw and z in dx, d[z][w] += d[y][w]*d[z][x]
            std::vector<std::pair<int, RingElement>> into_y;
            for (int w = 0; w < size(); ++w) {
                if (!alive[w] || w == cx) continue;
                auto it = cols[w].find(cy);
                if (it != cols[w].end() && !it->second.is_zero())
                    into_y.push_back({w, it->second});
            }
            std::vector<std::pair<int, RingElement>> out_x;
            for (const auto& [z, d] : cols[cx])
                if (alive[z] && z != cy && !d.is_zero()) out_x.push_back({z, d});
            for (const auto& [w, e] : into_y)
                for (const auto& [z, f] : out_x) {
                    RingElement add = e * f;
                    auto it = cols[w].find(z);
                    if (it == cols[w].end()) cols[w].emplace(z, add);
                    else it->second = it->second + add;
                }
            alive[cx] = alive[cy] = false;
            cols[cx].clear();
            cols[cy].clear();
            for (int w = 0; w < size(); ++w) {
                cols[w].erase(cx);
                cols[w].erase(cy);
            }
        }
        return subcomplex_of_alive(cols, alive);
    }

    // Elementary filtered change of basis: replace e_target by
    // e_target + coeff * e_source. coeff must be a single monomial making the
    // replacement grading-homogeneous and filtered.
    struct BasisMove {
        int target = 0;
        int source = 0;
        RingElement coeff;
    };

    ChainComplex change_basis(const std::vector<BasisMove>& moves) const {
        ChainComplex out = *this;
        for (const auto& mv : moves) out.apply_move(mv);
        out.validate();
        return out;
    }

    // Expresses dx in a full replacement basis; basis vectors must be
    // homogeneous and form a module basis (slice-wise solvability checks it).
    ChainComplex rebase(const std::vector<std::pair<Generator, Chain>>& basis) const;

    bool operator==(const ChainComplex& o) const {
        if (mode_ != o.mode_ || gens_.size() != o.gens_.size()) return false;
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name != o.gens_[i].name || gens_[i].gr_u != o.gens_[i].gr_u ||
                gens_[i].gr_v != o.gens_[i].gr_v)
                return false;
        }
        return cols_ == o.cols_;
    }

private:
    void add_coeff(int from, int to, const RingElement& c) {
        if (from < 0 || from >= size() || to < 0 || to >= size())
            throw ComplexError("arrow index out of range");
        if (c.mode() != mode_) throw ComplexError("ring mode mismatch in differential");
        if (c.is_zero()) return;
        auto it = cols_[from].find(to);
        if (it == cols_[from].end()) cols_[from].emplace(to, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) cols_[from].erase(it);
        }
    }

    ChainComplex subcomplex_of_alive(const std::vector<std::map<int, RingElement>>& cols,
                                     const std::vector<bool>& alive) const {
        std::vector<Generator> gens;
        std::vector<int> newid(size(), -1);
        for (int i = 0; i < size(); ++i)
            if (alive[i]) {
                newid[i] = int(gens.size());
                gens.push_back(gens_[i]);
            }
        std::vector<Arrow> arrows;
        for (int x = 0; x < size(); ++x) {
            if (!alive[x]) continue;
            for (const auto& [y, d] : cols[x])
                if (alive[y] && !d.is_zero()) arrows.push_back({newid[x], newid[y], d});
        }
        return ChainComplex(mode_, std::move(gens), arrows);
    }

    void check_move(const BasisMove& mv) const {
        if (mv.target == mv.source) throw ComplexError("basis change is not invertible");
        if (!mv.coeff.is_monomial()) throw ComplexError("basis change coefficient must be a monomial");
        Mono m = mv.coeff.single();
        const Generator& t = gens_.at(mv.target);
        const Generator& s = gens_.at(mv.source);
        if (mode_ == Mode::poly) {
            if (s.gr_u - 2 * m.u != t.gr_u || s.gr_v - 2 * m.v != t.gr_v)
                throw ComplexError("basis change is not grading-homogeneous");
        } else {
            if (m.u != m.v) throw ComplexError("basis change coefficient must be a U-power");
            if (s.gr_u - 2 * m.u != t.gr_u)
                throw ComplexError("basis change is not grading-homogeneous");
            if (m.u < 0 || t.alex() - s.alex() + m.u < 0)
                throw ComplexError("non-filtered basis change");
        }
    }

    void apply_move(const BasisMove& mv) {
        check_move(mv);
        const int w = mv.target, a = mv.source;
        const RingElement& lam = mv.coeff;
        // snapshot of the pieces the update reads
        std::map<int, RingElement> col_a = cols_[a];
        std::map<int, RingElement> col_w = cols_[w];
        std::vector<std::pair<int, RingElement>> row_w;  // z -> coeff of w in dz
        for (int z = 0; z < size(); ++z) {
            auto it = cols_[z].find(w);
            if (it != cols_[z].end() && !it->second.is_zero()) row_w.push_back({z, it->second});
        }
        auto add_entry = [&](int from, int to, const RingElement& add) {
            if (add.is_zero()) return;
            auto it = cols_[from].find(to);
            if (it == cols_[from].end()) cols_[from].emplace(to, add);
            else {
                it->second = it->second + add;
                if (it->second.is_zero()) cols_[from].erase(it);
            }
        };
        // column: d(w') = dw + lam * da
        for (const auto& [t, d] : col_a) add_entry(w, t, lam * d);
        // row: for z with w in dz, dz gains lam * (coeff) on a
        for (const auto& [z, d] : row_w)
            if (z != w) add_entry(z, a, lam * d);
        // second-order term from z == w
        auto itwa = col_a.find(w);
        if (itwa != col_a.end()) add_entry(w, a, lam * lam * itwa->second);
    }

    void validate() const {
        std::set<std::string> names;
        for (const auto& g : gens_) {
            if (g.name.empty()) throw ComplexError("generator with empty name");
            if (!names.insert(g.name).second)
                throw ComplexError("duplicate generator name " + g.name);
            if ((g.gr_u - g.gr_v) % 2 != 0)
                throw ComplexError("generator " + g.name + " has odd gr_u - gr_v");
        }
        for (int x = 0; x < size(); ++x) {
            for (const auto& [y, d] : cols_[x]) {
                if (d.is_zero()) continue;
                if (d.mode() != mode_) throw ComplexError("differential entry in wrong ring mode");
                for (const auto& t : d.terms()) {
                    const Generator& gx = gens_[x];
                    const Generator& gy = gens_[y];
                    if (mode_ == Mode::poly) {
                        if (gy.gr_u - 2 * t.u != gx.gr_u - 1 || gy.gr_v - 2 * t.v != gx.gr_v - 1)
                            throw ComplexError("incompatible gradings on arrow " + gx.name + " -> " + gy.name);
                    } else {
                        if (t.u != t.v)
                            throw ComplexError("non-diagonal coefficient in one-variable mode on " +
                                               gx.name + " -> " + gy.name);
                        if (gy.gr_u - 2 * t.u != gx.gr_u - 1)
                            throw ComplexError("incompatible gradings on arrow " + gx.name + " -> " + gy.name);
                        if (t.u < 0 || gx.alex() - gy.alex() + t.u < 0)
                            throw ComplexError("non-filtered arrow " + gx.name + " -> " + gy.name);
                    }
                }
            }
        }
        if (!verify_d_squared()) throw ComplexError("differential does not square to zero");
    }

    Mode mode_;
    std::vector<Generator> gens_;
    std::vector<std::map<int, RingElement>> cols_;
};

inline Chain chain_add(const Chain& a, const Chain& b) {
    Chain out = a;
    for (const auto& [i, c] : b) {
        auto it = out.find(i);
        if (it == out.end()) out.emplace(i, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

inline Chain chain_scale(const RingElement& r, const Chain& a) {
    Chain out;
    for (const auto& [i, c] : a) {
        RingElement t = r * c;
        if (!t.is_zero()) out.emplace(i, t);
    }
    return out;
}

}  // namespace cfk
