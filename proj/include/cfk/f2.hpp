#pragma once

// Dense linear algebra over F2 on word-packed bit vectors. Everything here is
// small (a few hundred dimensions at most), so simplicity beats cleverness.

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

namespace cfk {

struct F2Vec {
    int n = 0;
    std::vector<std::uint64_t> w;

    F2Vec() = default;
    explicit F2Vec(int n_) : n(n_), w((n_ + 63) / 64, 0) {}

    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool b) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (b) w[i >> 6] |= m; else w[i >> 6] &= ~m;
    }
    void flip(int i) { w[i >> 6] ^= std::uint64_t(1) << (i & 63); }
    void operator^=(const F2Vec& o) {
        assert(n == o.n);
        for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
    bool is_zero() const {
        for (auto x : w) if (x) return false;
        return true;
    }
    bool operator==(const F2Vec& o) const { return n == o.n && w == o.w; }
    int lowest_set() const {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k]) {
                std::uint64_t x = w[k];
                int b = 0;
                while (!(x & 1)) { x >>= 1; ++b; }
                return int(k) * 64 + b;
            }
        return -1;
    }
};

// Row space kept in reduced echelon form; supports membership and extension.
class F2Span {
public:
    explicit F2Span(int n = 0) : n_(n) {}

    int dim() const { return int(rows_.size()); }
    int ambient() const { return n_; }

    // Reduce v against the span; returns the residue.
    F2Vec reduce(F2Vec v) const {
        for (size_t i = 0; i < rows_.size(); ++i)
            if (v.get(pivots_[i])) v ^= rows_[i];
        return v;
    }
    bool contains(const F2Vec& v) const { return reduce(v).is_zero(); }

    // Adds v if independent; returns true if the span grew.
    bool add(const F2Vec& v) {
        F2Vec r = reduce(v);
        int p = r.lowest_set();
        if (p < 0) return false;
        for (size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].get(p)) rows_[i] ^= r;
        rows_.push_back(r);
        pivots_.push_back(p);
        return true;
    }

    bool contains_span(const F2Span& other) const {
        for (const auto& r : other.rows_)
            if (!contains(r)) return false;
        return true;
    }

    const std::vector<F2Vec>& rows() const { return rows_; }

private:
    int n_ = 0;
    std::vector<F2Vec> rows_;
    std::vector<int> pivots_;
};

inline F2Span intersect(const F2Span& a, const F2Span& b) {
    // Zassenhaus: row-reduce [A|A; B|0]; rows whose left half vanishes carry
    // the intersection in the right half.
    int n = a.ambient();
    assert(n == b.ambient());
    struct Row { F2Vec l, r; };
    std::vector<Row> ech;
    std::vector<int> pivots;
    F2Span inter(n);
    auto feed = [&](F2Vec l, F2Vec r) {
        for (size_t i = 0; i < ech.size(); ++i)
            if (l.get(pivots[i])) { l ^= ech[i].l; r ^= ech[i].r; }
        int p = l.lowest_set();
        if (p >= 0) {
            ech.push_back({l, r});
            pivots.push_back(p);
        } else {
            inter.add(r);
        }
    };
    for (const auto& v : a.rows()) feed(v, v);
    for (const auto& v : b.rows()) feed(v, F2Vec(n));
    return inter;
}

// Solve A x = b where A is given by columns. Returns x as column-index set.
inline std::optional<std::vector<int>> solve_columns(const std::vector<F2Vec>& cols, const F2Vec& b) {
    if (cols.empty()) return b.is_zero() ? std::optional<std::vector<int>>(std::vector<int>{}) : std::nullopt;
    int n = cols[0].n;
    struct Row { F2Vec v; F2Vec sel; };
    std::vector<Row> ech;
    std::vector<int> pivots;
    auto insert = [&](F2Vec v, F2Vec sel) {
        for (size_t i = 0; i < ech.size(); ++i)
            if (v.get(pivots[i])) { v ^= ech[i].v; sel ^= ech[i].sel; }
        int p = v.lowest_set();
        if (p < 0) return;
        ech.push_back({v, sel});
        pivots.push_back(p);
    };
    for (size_t j = 0; j < cols.size(); ++j) {
        F2Vec sel(int(cols.size()));
        sel.set(int(j), true);
        assert(cols[j].n == n);
        insert(cols[j], sel);
    }
    F2Vec r = b, sel(int(cols.size()));
    for (size_t i = 0; i < ech.size(); ++i)
        if (r.get(pivots[i])) { r ^= ech[i].v; sel ^= ech[i].sel; }
    if (!r.is_zero()) return std::nullopt;
    std::vector<int> out;
    for (int j = 0; j < int(cols.size()); ++j)
        if (sel.get(j)) out.push_back(j);
    return out;
}

// Nullspace basis of the matrix with the given columns (vectors over rows).
inline std::vector<F2Vec> nullspace_columns(const std::vector<F2Vec>& cols) {
    int m = int(cols.size());
    std::vector<F2Vec> out;
    if (m == 0) return out;
    int n = cols[0].n;
    // Gaussian elimination on columns, tracking combinations.
    std::vector<F2Vec> work = cols;
    std::vector<F2Vec> comb(m, F2Vec(m));
    for (int j = 0; j < m; ++j) comb[j].set(j, true);
    std::vector<int> pivot_row;
    std::vector<int> pivot_col;
    for (int j = 0; j < m; ++j) {
        F2Vec v = work[j], c = comb[j];
        for (size_t i = 0; i < pivot_col.size(); ++i)
            if (v.get(pivot_row[i])) { v ^= work[pivot_col[i]]; c ^= comb[pivot_col[i]]; }
        work[j] = v;
        comb[j] = c;
        int p = v.lowest_set();
        if (p >= 0) {
            pivot_row.push_back(p);
            pivot_col.push_back(j);
        } else {
            out.push_back(c);
        }
    }
    (void)n;
    return out;
}

inline int rank_columns(const std::vector<F2Vec>& cols) {
    if (cols.empty()) return 0;
    F2Span s(cols[0].n);
    for (const auto& c : cols) s.add(c);
    return s.dim();
}

}  // namespace cfk
