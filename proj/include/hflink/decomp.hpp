#pragma once

// Exact F2[v]-module classification for the circ flavor.  Setting u = 0 splits
// the complex into gr_w-lines, each a complex of graded free F2[v]-modules;
// homology per line is presented by a kernel basis and a relation matrix, and
// Smith reduction turns presentations (and kernel/intersection submodules)
// into explicit lists of free and v-torsion summands with positions.

#include <algorithm>

#include "hflink/complex.hpp"
#include "hflink/homology.hpp"
#include "hflink/vpoly.hpp"

namespace hflink {

struct Summand {
    bool free = true;
    Bigrading position;   // bigrading of the summand's generator
    unsigned order = 0;   // v-torsion order; meaningful when !free

    friend bool operator==(const Summand&, const Summand&) = default;
    friend auto operator<=>(const Summand&, const Summand&) = default;
};

struct ModuleDecomp {
    std::vector<Summand> summands;

    void normalize() { std::sort(summands.begin(), summands.end()); }
    std::size_t free_count() const {
        std::size_t n = 0;
        for (const auto& s : summands) n += s.free;
        return n;
    }
    std::size_t torsion_count() const { return summands.size() - free_count(); }

    // Hilbert function of the decomposition restricted to a window.
    HilbertTable hilbert(const Window& w) const {
        HilbertTable t;
        for (const auto& s : summands) {
            if (s.free) {
                for (Bigrading g = s.position; g.z >= w.z_lo; g.z -= 2)
                    if (w.contains(g)) ++t[g];
            } else {
                Bigrading g = s.position;
                for (unsigned k = 0; k < s.order; ++k, g.z -= 2)
                    if (w.contains(g)) ++t[g];
            }
        }
        return t;
    }

    friend bool operator==(const ModuleDecomp&, const ModuleDecomp&) = default;
};

inline std::string to_string(const ModuleDecomp& d) {
    std::string s;
    for (const auto& x : d.summands) {
        if (!s.empty()) s += " (+) ";
        s += x.free ? "F[v]" : ("F[v]/v^" + std::to_string(x.order));
        s += " at " + to_string(x.position);
    }
    return s.empty() ? "0" : s;
}

namespace vmod {

inline std::optional<Bigrading> infer_grading(const std::vector<VPoly>& coords,
                                              const std::vector<Bigrading>& slot_gradings) {
    std::optional<Bigrading> g;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const VPoly& p = coords[i];
        if (p.is_zero()) continue;
        for (int t = 0; t <= p.deg(); ++t) {
            if (!p.coeff((unsigned)t)) continue;
            Bigrading cand = slot_gradings[i] + Bigrading{0, -2ll * t};
            if (!g)
                g = cand;
            else if (*g != cand)
                return std::nullopt;
        }
    }
    return g;  // nullopt also for the zero vector
}

// Presentation of one gr_w line of the circ homology: generators = columns of
// `kernel` (cycles, in chain coordinates over the line's chain generators),
// relations = boundary expressions in those kernel coordinates.
struct LinePresentation {
    long long line_w = 0;
    std::vector<int> chain_gens;            // generator indices on this line
    std::vector<Bigrading> chain_gradings;  // their bigradings
    VMat kernel;                            // chain_gens x k
    std::vector<Bigrading> kernel_gradings; // grading of each kernel column
    VMat relations;                         // k x q
};

inline std::map<long long, std::vector<int>> gr_w_lines(const Complex& c) {
    std::map<long long, std::vector<int>> lines;
    for (int i = 0; i < (int)c.size(); ++i) lines[c.gens()[i].grading.w].push_back(i);
    return lines;
}

// Matrix of an entry map between two gr_w lines after setting u = 0.
inline VMat line_matrix(const EntryMap& entries, const std::vector<int>& from,
                        const std::vector<int>& to) {
    VMat m(to.size(), from.size());
    std::map<int, std::size_t> to_pos;
    for (std::size_t i = 0; i < to.size(); ++i) to_pos[to[i]] = i;
    for (std::size_t j = 0; j < from.size(); ++j) {
        for (const auto& [key, poly] : entries) {
            if (key.second != from[j]) continue;
            auto it = to_pos.find(key.first);
            if (it == to_pos.end()) continue;
            m.at(it->second, j) = m.at(it->second, j) + VPoly::from_poly(specialize(poly, Flavor::circ));
        }
    }
    return m;
}

inline LinePresentation present_line(const Complex& c,
                                     const std::map<long long, std::vector<int>>& lines,
                                     long long w) {
    static const std::vector<int> kEmpty;
    auto get = [&](long long key) -> const std::vector<int>& {
        auto it = lines.find(key);
        return it == lines.end() ? kEmpty : it->second;
    };
    LinePresentation pres;
    pres.line_w = w;
    pres.chain_gens = get(w);
    for (int g : pres.chain_gens) pres.chain_gradings.push_back(c.gens()[g].grading);
    VMat a = line_matrix(c.diff(), pres.chain_gens, get(w - 1));
    VMat b = line_matrix(c.diff(), get(w + 1), pres.chain_gens);
    auto kcols = vkernel(a);
    pres.kernel = VMat::from_columns(pres.chain_gens.size(), kcols);
    for (const auto& col : kcols) {
        auto g = infer_grading(col, pres.chain_gradings);
        if (!g) throw std::logic_error("non-homogeneous kernel column");
        pres.kernel_gradings.push_back(*g);
    }
    pres.relations = vsolve(pres.kernel, b);
    return pres;
}

// Decomposition of F[v]^k / im(relations), with generator gradings.
inline std::vector<Summand> decompose_quotient(const VMat& relations,
                                               const std::vector<Bigrading>& gen_gradings) {
    std::size_t k = relations.rows();
    if (k == 0) return {};
    SmithForm s = smith(relations);
    std::vector<Summand> out;
    std::size_t nmin = std::min(relations.rows(), relations.cols());
    for (std::size_t i = 0; i < k; ++i) {
        VPoly d = i < nmin ? s.d.at(i, i) : VPoly::zero();
        auto grading = infer_grading(s.rinv.col(i), gen_gradings);
        if (!grading) throw std::logic_error("non-homogeneous basis column in quotient");
        if (d.is_zero()) {
            out.push_back({true, *grading, 0});
        } else if (d.is_monomial()) {
            if (d.deg() > 0) out.push_back({false, *grading, (unsigned)d.deg()});
            // unit relation: summand dies
        } else {
            throw std::logic_error("non-monomial invariant factor on graded input");
        }
    }
    return out;
}

// Generators of { y : P_i y in im(X_i) for all i } as columns.
// Each pair (P_i, X_i) maps from F[v]^k into the same target presentation.
inline VMat submodule_kernel(std::size_t k,
                             const std::vector<std::pair<VMat, VMat>>& conditions) {
    std::size_t total_rows = 0, total_cols = k;
    for (const auto& [p, x] : conditions) {
        total_rows += p.rows();
        total_cols += x.cols();
    }
    if (total_rows == 0) return VMat::identity(k);
    VMat stacked(total_rows, total_cols);
    std::size_t row0 = 0, col0 = k;
    for (const auto& [p, x] : conditions) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) stacked.at(row0 + i, j) = p.at(i, j);
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) stacked.at(row0 + i, col0 + j) = x.at(i, j);
        row0 += p.rows();
        col0 += x.cols();
    }
    auto kernel = vkernel(stacked);
    std::vector<std::vector<VPoly>> ycols;
    for (const auto& col : kernel) {
        std::vector<VPoly> y(col.begin(), col.begin() + k);
        bool zero = true;
        for (const auto& e : y)
            if (!e.is_zero()) zero = false;
        if (!zero) ycols.push_back(std::move(y));
    }
    return VMat::from_columns(k, ycols);
}

// Intersection of the submodules generated by the columns of A and B.
inline VMat submodule_intersection(std::size_t k, const VMat& a, const VMat& b) {
    VMat stacked(k, a.cols() + b.cols());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) stacked.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) stacked.at(i, a.cols() + j) = b.at(i, j);
    }
    auto kernel = vkernel(stacked);
    std::vector<std::vector<VPoly>> cols;
    for (const auto& col : kernel) {
        std::vector<VPoly> y(k);
        for (std::size_t i = 0; i < k; ++i) {
            VPoly acc;
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!col[j].is_zero()) acc = acc + a.at(i, j) * col[j];
            y[i] = acc;
        }
        bool zero = true;
        for (const auto& e : y)
            if (!e.is_zero()) zero = false;
        if (!zero) cols.push_back(std::move(y));
    }
    return VMat::from_columns(k, cols);
}

// Decomposition of (submodule generated by G) / im(X), where im(X) lies inside
// the submodule.  Gradings of G's columns are inferred from slot gradings.
inline std::vector<Summand> decompose_subquotient(const VMat& g, const VMat& x,
                                                  const std::vector<Bigrading>& slot_gradings) {
    if (g.cols() == 0) return {};
    std::vector<Bigrading> ggrad;
    for (std::size_t j = 0; j < g.cols(); ++j) {
        auto gr = infer_grading(g.col(j), slot_gradings);
        if (!gr) throw std::logic_error("non-homogeneous submodule generator");
        ggrad.push_back(*gr);
    }
    VMat e = vsolve(g, x);                 // G * E = X
    auto syz = vkernel(g);                 // kernel of G
    VMat relations(g.cols(), e.cols() + syz.size());
    for (std::size_t i = 0; i < g.cols(); ++i) {
        for (std::size_t j = 0; j < e.cols(); ++j) relations.at(i, j) = e.at(i, j);
        for (std::size_t j = 0; j < syz.size(); ++j)
            relations.at(i, e.cols() + j) = syz[j][i];
    }
    return decompose_quotient(relations, ggrad);
}

} // namespace vmod

// Full circ-flavor module decomposition of the homology of C.  Exact and
// window-free; the window only truncates reporting.
inline ModuleDecomp circ_decompose(const Complex& c, const Window* w = nullptr) {
    auto lines = vmod::gr_w_lines(c);
    ModuleDecomp out;
    for (const auto& [line_w, gens] : lines) {
        auto pres = vmod::present_line(c, lines, line_w);
        for (auto s : vmod::decompose_quotient(pres.relations, pres.kernel_gradings)) {
            if (w && !w->contains(s.position)) continue;
            out.summands.push_back(s);
        }
    }
    out.normalize();
    return out;
}

} // namespace hflink
