#pragma once

// Exact arithmetic over F2[u,v] together with the bigrading bookkeeping used
// throughout: u has bidegree (-2,0), v has bidegree (0,-2).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hflink {

struct Bigrading {
    long long w = 0;
    long long z = 0;

    friend Bigrading operator+(Bigrading a, Bigrading b) { return {a.w + b.w, a.z + b.z}; }
    friend Bigrading operator-(Bigrading a, Bigrading b) { return {a.w - b.w, a.z - b.z}; }
    Bigrading operator-() const { return {-w, -z}; }
    friend bool operator==(Bigrading, Bigrading) = default;
    friend auto operator<=>(Bigrading, Bigrading) = default;
};

inline std::string to_string(Bigrading g) {
    return "(" + std::to_string(g.w) + "," + std::to_string(g.z) + ")";
}

enum class Flavor { minus, circ, hat };

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::minus: return "minus";
        case Flavor::circ: return "circ";
        case Flavor::hat: return "hat";
    }
    return "?";
}

inline Flavor flavor_from_name(const std::string& s) {
    if (s == "minus") return Flavor::minus;
    if (s == "circ") return Flavor::circ;
    if (s == "hat") return Flavor::hat;
    throw std::invalid_argument("unknown flavor: " + s);
}

// u^a v^b with non-negative exponents.  Coefficients live in F2, so a
// monomial is either present in a polynomial or not.
struct Monomial {
    unsigned a = 0;
    unsigned b = 0;

    friend bool operator==(Monomial, Monomial) = default;
    friend auto operator<=>(Monomial m, Monomial n) {
        // Display order: higher u-power first, then higher v-power.
        if (m.a != n.a) return n.a <=> m.a;
        return n.b <=> m.b;
    }
    friend Monomial operator*(Monomial m, Monomial n) {
        unsigned long long a = (unsigned long long)m.a + n.a;
        unsigned long long b = (unsigned long long)m.b + n.b;
        if (a > 0xffffffffull || b > 0xffffffffull)
            throw std::overflow_error("monomial exponent overflow");
        return {(unsigned)a, (unsigned)b};
    }
};

inline Bigrading monomial_bidegree(Monomial m) {
    return {-2ll * m.a, -2ll * m.b};
}

// Element of F2[u,v]: a finite set of monomials, addition = symmetric
// difference.
class Poly {
public:
    Poly() = default;
    explicit Poly(Monomial m) { terms_.insert(m); }
    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Monomial{0, 0}); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && *terms_.begin() == Monomial{0, 0}; }
    bool contains(Monomial m) const { return terms_.count(m) != 0; }
    std::size_t term_count() const { return terms_.size(); }
    const std::set<Monomial>& terms() const { return terms_; }

    void toggle(Monomial m) {
        auto [it, inserted] = terms_.insert(m);
        if (!inserted) terms_.erase(it);
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        Poly r = p;
        for (Monomial m : q.terms_) r.toggle(m);
        return r;
    }
    Poly& operator+=(const Poly& q) {
        for (Monomial m : q.terms_) toggle(m);
        return *this;
    }
    friend Poly operator*(const Poly& p, const Poly& q) {
        Poly r;
        for (Monomial m : p.terms_)
            for (Monomial n : q.terms_) r.toggle(m * n);
        return r;
    }
    friend bool operator==(const Poly&, const Poly&) = default;

private:
    std::set<Monomial> terms_;
};

inline Poly poly_u(unsigned k = 1) { return Poly(Monomial{k, 0}); }
inline Poly poly_v(unsigned k = 1) { return Poly(Monomial{0, k}); }

// Flavor specialization: circ kills u, hat kills both variables.
inline Poly specialize(const Poly& p, Flavor f) {
    if (f == Flavor::minus) return p;
    Poly r;
    for (Monomial m : p.terms()) {
        if (f == Flavor::circ && m.a == 0) r.toggle(m);
        if (f == Flavor::hat && m.a == 0 && m.b == 0) r.toggle(m);
    }
    return r;
}

inline bool monomial_survives(Monomial m, Flavor f) {
    if (f == Flavor::minus) return true;
    if (f == Flavor::circ) return m.a == 0;
    return m.a == 0 && m.b == 0;
}

// --- textual literals -------------------------------------------------------
//
// A polynomial literal is a "+"-separated sum of monomials, each written as a
// product of "u^a" and "v^b" factors ("u" and "v" mean exponent 1); the empty
// monomial is written "1".  Example: "u^2 + u v^3 + 1".

inline std::string to_string(Monomial m) {
    if (m.a == 0 && m.b == 0) return "1";
    std::string s;
    if (m.a > 0) {
        s += "u";
        if (m.a > 1) s += "^" + std::to_string(m.a);
    }
    if (m.b > 0) {
        if (!s.empty()) s += " ";
        s += "v";
        if (m.b > 1) s += "^" + std::to_string(m.b);
    }
    return s;
}

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (Monomial m : p.terms()) {
        if (!s.empty()) s += " + ";
        s += to_string(m);
    }
    return s;
}

namespace detail {

inline bool parse_var_power(const std::string& tok, char var, unsigned& out) {
    if (tok.empty() || tok[0] != var) return false;
    if (tok.size() == 1) {
        out = 1;
        return true;
    }
    if (tok[1] != '^') return false;
    std::size_t pos = 0;
    unsigned long val = 0;
    try {
        val = std::stoul(tok.substr(2), &pos);
    } catch (...) {
        return false;
    }
    if (pos != tok.size() - 2 || val > 0xffffffffull) return false;
    out = (unsigned)val;
    return true;
}

} // namespace detail

// Parses a single monomial from whitespace-separated factor tokens.
inline Monomial parse_monomial_tokens(const std::vector<std::string>& toks) {
    Monomial m{0, 0};
    bool saw_u = false, saw_v = false;
    for (const auto& t : toks) {
        unsigned e = 0;
        if (t == "1") continue;
        if (detail::parse_var_power(t, 'u', e)) {
            if (saw_u) throw std::invalid_argument("repeated u factor in monomial");
            saw_u = true;
            m.a = e;
        } else if (detail::parse_var_power(t, 'v', e)) {
            if (saw_v) throw std::invalid_argument("repeated v factor in monomial");
            saw_v = true;
            m.b = e;
        } else {
            throw std::invalid_argument("bad monomial factor: '" + t + "'");
        }
    }
    return m;
}

inline Poly parse_poly(const std::string& text) {
    // Split on '+', then each summand on whitespace.
    Poly p;
    std::size_t start = 0;
    while (true) {
        std::size_t plus = text.find('+', start);
        std::string part = text.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        std::istringstream ps(part);
        std::vector<std::string> toks;
        std::string t;
        while (ps >> t) toks.push_back(t);
        if (toks.empty())
            throw std::invalid_argument("empty summand in polynomial literal: '" + text + "'");
        if (!(toks.size() == 1 && toks[0] == "0"))
            p.toggle(parse_monomial_tokens(toks));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return p;
}

} // namespace hflink
