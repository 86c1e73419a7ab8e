#pragma once

// Coefficients: finite F2-sums of monomials U^a V^b in two ring modes.
//
//   poly  : F[U,V], exponents >= 0
//   local : F[U,V,(UV)^-1], exponents in Z, every monomial a unit
//
// Elements are kept fully expanded; equality is set comparison of terms.

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfk {

enum class Mode { poly, local };

inline const char* mode_name(Mode m) { return m == Mode::poly ? "poly" : "local"; }

struct RingError : std::runtime_error {
    explicit RingError(const std::string& s) : std::runtime_error(s) {}
};

struct Mono {
    int u = 0;
    int v = 0;
    friend bool operator==(const Mono&, const Mono&) = default;
    friend auto operator<=>(const Mono&, const Mono&) = default;
};

class RingElement {
public:
    RingElement() : mode_(Mode::poly) {}
    explicit RingElement(Mode m) : mode_(m) {}

    static RingElement zero(Mode m) { return RingElement(m); }
    static RingElement one(Mode m) { return monomial(m, 0, 0); }
    static RingElement monomial(Mode m, int u, int v) {
        RingElement r(m);
        r.check_mono(Mono{u, v});
        r.terms_.push_back(Mono{u, v});
        return r;
    }
    static RingElement from_terms(Mode m, std::vector<Mono> ts) {
        RingElement r(m);
        for (const auto& t : ts) r.check_mono(t);
        std::sort(ts.begin(), ts.end());
        // pairs cancel in characteristic 2
        for (size_t i = 0; i < ts.size();) {
            if (i + 1 < ts.size() && ts[i] == ts[i + 1]) { i += 2; continue; }
            r.terms_.push_back(ts[i]);
            ++i;
        }
        return r;
    }

    Mode mode() const { return mode_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return int(terms_.size()); }
    const std::vector<Mono>& terms() const { return terms_; }

    bool is_monomial() const { return terms_.size() == 1; }
    Mono single() const {
        if (!is_monomial()) throw RingError("element is not a single monomial");
        return terms_[0];
    }

    bool is_unit() const {
        if (terms_.size() != 1) return false;
        if (mode_ == Mode::local) return true;
        return terms_[0] == Mono{0, 0};
    }

    RingElement inverse() const {
        if (!is_unit()) throw RingError("element is not a unit");
        return monomial(mode_, -terms_[0].u, -terms_[0].v);
    }

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        if (a.mode_ != b.mode_) throw RingError("ring mode mismatch in add");
        std::vector<Mono> ts;
        // symmetric difference of sorted term lists
        std::set_symmetric_difference(a.terms_.begin(), a.terms_.end(),
                                      b.terms_.begin(), b.terms_.end(),
                                      std::back_inserter(ts));
        RingElement r(a.mode_);
        r.terms_ = std::move(ts);
        return r;
    }

    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        if (a.mode_ != b.mode_) throw RingError("ring mode mismatch in mul");
        std::vector<Mono> ts;
        ts.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_)
                ts.push_back(Mono{s.u + t.u, s.v + t.v});
        return from_terms(a.mode_, std::move(ts));
    }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.mode_ == b.mode_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            if (!first) os << " + ";
            first = false;
            if (t.u == 0 && t.v == 0) { os << "1"; continue; }
            bool sp = false;
            if (t.u != 0) {
                os << "U";
                if (t.u != 1) os << "^" << t.u;
                sp = true;
            }
            if (t.v != 0) {
                if (sp) os << " ";
                os << "V";
                if (t.v != 1) os << "^" << t.v;
            }
        }
        return os.str();
    }

    // Parses the same grammar str() emits: "+"-separated products of
    // "U^a V^b" factors, "1" for the empty monomial.
    static RingElement parse(Mode m, const std::string& s);

private:
    void check_mono(const Mono& t) const {
        if (mode_ == Mode::poly && (t.u < 0 || t.v < 0))
            throw RingError("negative exponent in polynomial mode");
    }

    Mode mode_;
    std::vector<Mono> terms_;  // sorted, duplicate-free
};

// m1 / m2 when the quotient lies in the ring.
inline std::optional<Mono> divide(Mode mode, const Mono& m1, const Mono& m2) {
    Mono q{m1.u - m2.u, m1.v - m2.v};
    if (mode == Mode::poly && (q.u < 0 || q.v < 0)) return std::nullopt;
    return q;
}

inline RingElement RingElement::parse(Mode m, const std::string& s) {
    std::vector<Mono> ts;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && isspace((unsigned char)s[i])) ++i; };
    auto parse_int = [&]() -> int {
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
        if (i >= s.size() || !isdigit((unsigned char)s[i])) throw RingError("bad exponent in ring element");
        long val = 0;
        while (i < s.size() && isdigit((unsigned char)s[i])) val = val * 10 + (s[i++] - '0');
        return int(neg ? -val : val);
    };
    skip_ws();
    if (i >= s.size()) throw RingError("empty ring element");
    if (s[i] == '0') {
        ++i;
        skip_ws();
        if (i != s.size()) throw RingError("bad ring element");
        return zero(m);
    }
    while (true) {
        skip_ws();
        Mono t{0, 0};
        bool any = false;
        while (i < s.size()) {
            skip_ws();
            if (i >= s.size()) break;
            char c = s[i];
            if (c == '1' && !any) { ++i; any = true; continue; }
            if (c != 'U' && c != 'V') break;
            ++i;
            int e = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') { ++i; skip_ws(); e = parse_int(); }
            if (c == 'U') t.u += e; else t.v += e;
            any = true;
        }
        if (!any) throw RingError("bad term in ring element");
        ts.push_back(t);
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] != '+') throw RingError("expected '+' in ring element");
        ++i;
    }
    return from_terms(m, std::move(ts));
}

}  // namespace cfk
