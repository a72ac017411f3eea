#pragma once

// Bigraded chain complexes over F2[u,v]: validation, the model constructors
// (staircases, tensor products, duals, shifts, quasi-stabilization) and the
// chain-level basepoint maps obtained by differentiating the differential.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hflink/poly.hpp"

namespace hflink {

struct Generator {
    std::string name;
    Bigrading grading;
    friend bool operator==(const Generator&, const Generator&) = default;
};

// Sparse matrix of Poly entries indexed by generator positions.
// entry[{target, source}] = coefficient of target in the image of source.
using EntryMap = std::map<std::pair<int, int>, Poly>;

struct ValidationIssue {
    std::string what;   // "d2", "homogeneity", "unit-entry", "structure"
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool d_squared_zero = true;
    bool homogeneous = true;
    bool reduced = true;
    bool ok() const { return issues.empty(); }
    std::string summary() const {
        if (ok()) return "valid";
        std::string s;
        for (const auto& i : issues) s += "[" + i.what + "] " + i.detail + "\n";
        return s;
    }
};

class Complex {
public:
    Complex() = default;
    Complex(std::string name, std::vector<Generator> gens)
        : name_(std::move(name)), gens_(std::move(gens)) {
        for (int i = 0; i < (int)gens_.size(); ++i) {
            if (!index_.emplace(gens_[i].name, i).second)
                throw std::invalid_argument("duplicate generator name: " + gens_[i].name);
        }
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::vector<Generator>& gens() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    int basepoint_pairs() const { return basepoint_pairs_; }
    void set_basepoint_pairs(int n) { basepoint_pairs_ = n; }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("no generator named " + name);
        return it->second;
    }
    bool has_generator(const std::string& name) const { return index_.count(name) != 0; }

    const Poly& diff_entry(int target, int source) const {
        static const Poly kZero;
        auto it = diff_.find({target, source});
        return it == diff_.end() ? kZero : it->second;
    }
    void add_diff(int target, int source, const Poly& p) {
        if (p.is_zero()) return;
        Poly& e = diff_[{target, source}];
        e += p;
        if (e.is_zero()) diff_.erase({target, source});
    }
    void add_diff(const std::string& target, const std::string& source, const Poly& p) {
        add_diff(index_of(target), index_of(source), p);
    }
    const EntryMap& diff() const { return diff_; }

    // d(source) as a list of (target, coefficient).
    std::vector<std::pair<int, Poly>> d_of(int source) const {
        std::vector<std::pair<int, Poly>> out;
        for (const auto& [key, poly] : diff_)
            if (key.second == source) out.emplace_back(key.first, poly);
        return out;
    }

    ValidationReport validate() const;

private:
    std::string name_;
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
    EntryMap diff_;
    int basepoint_pairs_ = 1;
};

// A matrix of Poly entries over the generators of a complex, homogeneous of a
// declared bidegree.  Basepoint maps have bidegree (1,-1) (phi) and (-1,1)
// (psi).
struct Endomorphism {
    std::string name;
    Bigrading bidegree;
    EntryMap entries;

    const Poly& entry(int target, int source) const {
        static const Poly kZero;
        auto it = entries.find({target, source});
        return it == entries.end() ? kZero : it->second;
    }
    void add(int target, int source, const Poly& p) {
        if (p.is_zero()) return;
        Poly& e = entries[{target, source}];
        e += p;
        if (e.is_zero()) entries.erase({target, source});
    }
};

inline ValidationReport Complex::validate() const {
    ValidationReport rep;
    if (gens_.empty())
        rep.issues.push_back({"structure", "empty complex"});
    // Homogeneity: every monomial of entry (y <- x) must satisfy
    // grading(y) + deg(m) = grading(x) + (-1,-1).
    for (const auto& [key, poly] : diff_) {
        const Generator& y = gens_[key.first];
        const Generator& x = gens_[key.second];
        for (Monomial m : poly.terms()) {
            if (y.grading + monomial_bidegree(m) != x.grading + Bigrading{-1, -1}) {
                rep.homogeneous = false;
                rep.issues.push_back({"homogeneity",
                                      "entry d(" + x.name + ") -> " + y.name + " term " +
                                          to_string(m) + " is not of bidegree (-1,-1)"});
            }
        }
        if (poly.contains(Monomial{0, 0})) rep.reduced = false;
    }
    // d^2 = 0.
    for (std::size_t x = 0; x < gens_.size(); ++x) {
        std::map<int, Poly> d2;
        for (const auto& [key, poly] : diff_) {
            if ((std::size_t)key.second != x) continue;
            int mid = key.first;
            for (const auto& [key2, poly2] : diff_) {
                if (key2.second != mid) continue;
                Poly& acc = d2[key2.first];
                acc += poly2 * poly;
            }
        }
        for (const auto& [target, poly] : d2) {
            if (!poly.is_zero()) {
                rep.d_squared_zero = false;
                rep.issues.push_back({"d2", "d^2(" + gens_[x].name + ") has term " +
                                                to_string(poly) + " on " + gens_[target].name});
            }
        }
    }
    return rep;
}

inline void require_valid(const Complex& c) {
    auto rep = c.validate();
    if (!rep.ok())
        throw std::invalid_argument("invalid complex '" + c.name() + "':\n" + rep.summary());
}

// --- torus-knot combinatorics ------------------------------------------------

// Exponent sequence of the symmetrized Alexander polynomial of T(p,q),
// obtained by exact integer polynomial division of
// (t^{pq}-1)(t-1) / ((t^p-1)(t^q-1)).
inline std::vector<long long> torus_knot_exponents(long long p, long long q) {
    if (!(0 < p && p < q)) throw std::invalid_argument("torus knot requires 0 < p < q");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("torus knot requires gcd(p,q) = 1");
    auto mul = [](const std::vector<long long>& a, const std::vector<long long>& b) {
        std::vector<long long> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    auto cyc = [](long long n) {  // t^n - 1
        std::vector<long long> c(n + 1, 0);
        c[0] = -1;
        c[n] = 1;
        return c;
    };
    std::vector<long long> num = mul(cyc(p * q), cyc(1));
    std::vector<long long> den = mul(cyc(p), cyc(q));
    // Long division num / den, exact.
    std::vector<long long> quot(num.size() - den.size() + 1, 0);
    std::vector<long long> rem = num;
    for (long long d = (long long)rem.size() - 1; d >= (long long)den.size() - 1; --d) {
        long long lead = rem[d];
        if (lead == 0) continue;
        long long shift = d - ((long long)den.size() - 1);
        long long c = lead / den.back();
        quot[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) rem[shift + i] -= c * den[i];
    }
    for (long long r : rem)
        if (r != 0) throw std::logic_error("torus knot division not exact");
    // Collect exponents of the (alternating +-1) quotient, symmetrized.
    long long genus = (p - 1) * (q - 1) / 2;
    std::vector<long long> exps;
    for (long long d = (long long)quot.size() - 1; d >= 0; --d) {
        if (quot[d] == 0) continue;
        if (quot[d] != 1 && quot[d] != -1)
            throw std::logic_error("unexpected coefficient in torus Alexander polynomial");
        exps.push_back(d - genus);
    }
    if (exps.size() % 2 == 0) throw std::logic_error("even number of Alexander terms");
    return exps;
}

// Alternating partial sums b_{2i} = -2 * sum_{j=1..2i} (-1)^j a_j.
inline std::vector<long long> alexander_b_sequence(const std::vector<long long>& a) {
    std::vector<long long> b;
    long long acc = 0;
    for (std::size_t j = 1; j < a.size(); j += 2) {
        acc += 2 * (a[j] - a[j + 1]);
        b.push_back(acc);
    }
    b.insert(b.begin(), 0);
    return b;  // b[i] = b_{2i}, i = 0..n
}

// Grading offsets c_{2i} = 2 * sum_{j=0..2i-1} (-1)^j a_j (odd-gap sums);
// these make the staircase differential below homogeneous and reproduce the
// knot's bigraded generators.
inline std::vector<long long> staircase_grading_sequence(const std::vector<long long>& a) {
    std::vector<long long> c;
    c.push_back(0);
    long long acc = 0;
    for (std::size_t j = 0; j + 1 < a.size(); j += 2) {
        acc += 2 * (a[j] - a[j + 1]);
        c.push_back(acc);
    }
    return c;  // c[i] = c_{2i}, i = 0..n
}

// Staircase complex attached to a strictly decreasing, antisymmetric exponent
// sequence a_0 > ... > a_{2n} with a_i = -a_{2n-i}: generators x_0..x_n and
// z_1..z_n with d(z_i) = u^{a_{2i-2}-a_{2i-1}} x_{i-1} + v^{a_{2i-1}-a_{2i}} x_i.
inline Complex staircase_from_exponents(const std::vector<long long>& a,
                                        const std::string& name = "staircase") {
    if (a.size() % 2 == 0 || a.empty())
        throw std::invalid_argument("staircase exponent list must have odd length");
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] <= a[i + 1])
            throw std::invalid_argument("staircase exponents must be strictly decreasing");
    std::size_t n = (a.size() - 1) / 2;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != -a[a.size() - 1 - i])
            throw std::invalid_argument("staircase exponents must be antisymmetric");
    std::vector<long long> c = staircase_grading_sequence(a);
    std::vector<Generator> gens;
    for (std::size_t i = 0; i <= n; ++i)
        gens.push_back({"x" + std::to_string(i), {-c[i], -c[n - i]}});
    for (std::size_t i = 1; i <= n; ++i)
        gens.push_back({"z" + std::to_string(i), {-c[i] + 1, -c[n - i + 1] + 1}});
    Complex cx(name, std::move(gens));
    for (std::size_t i = 1; i <= n; ++i) {
        unsigned ue = (unsigned)(a[2 * i - 2] - a[2 * i - 1]);
        unsigned ve = (unsigned)(a[2 * i - 1] - a[2 * i]);
        cx.add_diff("x" + std::to_string(i - 1), "z" + std::to_string(i), poly_u(ue));
        cx.add_diff("x" + std::to_string(i), "z" + std::to_string(i), poly_v(ve));
    }
    return cx;
}

inline Complex staircase(long long p, long long q) {
    return staircase_from_exponents(torus_knot_exponents(p, q),
                                    "staircase(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

inline Complex unknot_complex() {
    Complex c("unknot", {{"x0", {0, 0}}});
    return c;
}

// --- structural operations ---------------------------------------------------

inline Complex tensor(const Complex& c1, const Complex& c2) {
    std::vector<Generator> gens;
    auto name_of = [](const Generator& g1, const Generator& g2) {
        return g1.name + "." + g2.name;
    };
    for (const auto& g1 : c1.gens())
        for (const auto& g2 : c2.gens())
            gens.push_back({name_of(g1, g2), g1.grading + g2.grading});
    Complex out(c1.name() + "(x)" + c2.name(), std::move(gens));
    std::size_t n2 = c2.size();
    auto idx = [n2](int i, int j) { return (int)(i * n2 + j); };
    for (const auto& [key, poly] : c1.diff())
        for (std::size_t j = 0; j < n2; ++j)
            out.add_diff(idx(key.first, (int)j), idx(key.second, (int)j), poly);
    for (const auto& [key, poly] : c2.diff())
        for (std::size_t i = 0; i < c1.size(); ++i)
            out.add_diff(idx((int)i, key.first), idx((int)i, key.second), poly);
    out.set_basepoint_pairs(c1.basepoint_pairs());
    return out;
}

inline Complex dual(const Complex& c) {
    std::vector<Generator> gens;
    for (const auto& g : c.gens()) gens.push_back({g.name + "*", -g.grading});
    Complex out(c.name() + "*", std::move(gens));
    for (const auto& [key, poly] : c.diff())
        out.add_diff(key.second, key.first, poly);  // transpose
    out.set_basepoint_pairs(c.basepoint_pairs());
    return out;
}

inline Complex shift(const Complex& c, Bigrading s) {
    std::vector<Generator> gens;
    for (const auto& g : c.gens()) gens.push_back({g.name, g.grading + s});
    Complex out(c.name(), std::move(gens));
    for (const auto& [key, poly] : c.diff()) out.add_diff(key.first, key.second, poly);
    out.set_basepoint_pairs(c.basepoint_pairs());
    return out;
}

// Formal u-derivative of the differential on a reduced free model: each term
// u^k v^l with k odd contributes u^{k-1} v^l.  This is the chain-level sum of
// the w-basepoint actions.
inline Endomorphism phi(const Complex& c) {
    auto rep = c.validate();
    if (!rep.reduced)
        throw std::invalid_argument("phi requires a reduced complex (no unit entries)");
    Endomorphism e{"phi", {1, -1}, {}};
    for (const auto& [key, poly] : c.diff()) {
        Poly der;
        for (Monomial m : poly.terms())
            if (m.a % 2 == 1) der.toggle({m.a - 1, m.b});
        e.add(key.first, key.second, der);
    }
    return e;
}

// Formal v-derivative, the z-basepoint analogue.
inline Endomorphism psi(const Complex& c) {
    auto rep = c.validate();
    if (!rep.reduced)
        throw std::invalid_argument("psi requires a reduced complex (no unit entries)");
    Endomorphism e{"psi", {-1, 1}, {}};
    for (const auto& [key, poly] : c.diff()) {
        Poly der;
        for (Monomial m : poly.terms())
            if (m.b % 2 == 1) der.toggle({m.a, m.b - 1});
        e.add(key.first, key.second, der);
    }
    return e;
}

// Extends an endomorphism of `base` block-diagonally to base (+) base[shift].
inline Endomorphism block_diagonal(const Endomorphism& e, std::size_t n) {
    Endomorphism out{e.name, e.bidegree, {}};
    for (const auto& [key, poly] : e.entries) {
        out.add(key.first, key.second, poly);
        out.add(key.first + (int)n, key.second + (int)n, poly);
    }
    return out;
}

struct QuasiStabilization {
    Complex complex;        // C (+) C[-1,1]
    Endomorphism phi_new;   // kills the original copy, maps the shifted copy onto it
    Endomorphism psi_new;   // transposed block
};

// Model-level addition of a basepoint pair: the complex doubles as
// C (+) C' where C' is C with gradings shifted by (-1,+1), the differential is
// block diagonal, and the new basepoint maps are identity blocks.  phi_new has
// bidegree (1,-1) and its kernel on homology is the unshifted copy, which is
// the canonical (grading-preserving) image of the original model.
inline QuasiStabilization quasi_stabilize(const Complex& c) {
    std::size_t n = c.size();
    std::vector<Generator> gens;
    std::set<std::string> taken;
    for (const auto& g : c.gens()) {
        gens.push_back(g);
        taken.insert(g.name);
    }
    for (const auto& g : c.gens()) {
        std::string name = g.name + "'";
        while (taken.count(name)) name += "'";
        taken.insert(name);
        gens.push_back({name, g.grading + Bigrading{-1, 1}});
    }
    Complex out(c.name() + "+pair", std::move(gens));
    for (const auto& [key, poly] : c.diff()) {
        out.add_diff(key.first, key.second, poly);
        out.add_diff(key.first + (int)n, key.second + (int)n, poly);
    }
    out.set_basepoint_pairs(c.basepoint_pairs() + 1);
    QuasiStabilization qs{std::move(out), {"phi_new", {1, -1}, {}}, {"psi_new", {-1, 1}, {}}};
    for (std::size_t i = 0; i < n; ++i) {
        qs.phi_new.add((int)i, (int)(i + n), Poly::one());  // shifted copy -> original copy
        qs.psi_new.add((int)(i + n), (int)i, Poly::one());  // original copy -> shifted copy
    }
    return qs;
}

// Figure-eight knot model: five generators, d(x1) = v x0, d(y0) = u x0,
// d(y1) = v y0 + u x1.
inline Complex figure_eight_complex() {
    Complex c("figure_eight", {{"x", {0, 0}},
                               {"x0", {0, 0}},
                               {"x1", {1, -1}},
                               {"y0", {-1, 1}},
                               {"y1", {0, 0}}});
    c.add_diff("x0", "x1", poly_v());
    c.add_diff("x0", "y0", poly_u());
    c.add_diff("y0", "y1", poly_v());
    c.add_diff("x1", "y1", poly_u());
    return c;
}

// Structural isomorphism after forgetting names: same gradings in order and
// identical differential entries under the index correspondence.
inline bool structurally_equal(const Complex& a, const Complex& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.gens()[i].grading != b.gens()[i].grading) return false;
    return a.diff() == b.diff();
}

} // namespace hflink
