#pragma once

// Degreewise exact homology in a grading window.  Every bidegree slice of a
// complex over F2[u,v] (or its circ/hat specialization) is finite dimensional
// because each generator contributes at most one monomial per bidegree, so
// homology, induced-map ranks and boundary tests reduce to GF(2) linear
// algebra slice by slice.
//
// Window semantics: results are only reported on the trusted interior, the
// set of bidegrees whose required neighbor slices also lie in the window.
// Queries outside it are refused, never truncated.

#include <map>
#include <optional>

#include "hflink/complex.hpp"
#include "hflink/gf2.hpp"

namespace hflink {

struct Window {
    long long w_lo = -40, w_hi = 8;
    long long z_lo = -40, z_hi = 8;

    bool contains(Bigrading g) const {
        return w_lo <= g.w && g.w <= w_hi && z_lo <= g.z && g.z <= z_hi;
    }
    std::size_t cell_count() const {
        if (w_hi < w_lo || z_hi < z_lo) return 0;
        return (std::size_t)(w_hi - w_lo + 1) * (std::size_t)(z_hi - z_lo + 1);
    }
};

// Window that covers all generator gradings with the given margin.
inline Window window_for(const Complex& c, long long margin = 4) {
    Window w{0, 0, 0, 0};
    bool first = true;
    for (const auto& g : c.gens()) {
        if (first) {
            w = {g.grading.w, g.grading.w, g.grading.z, g.grading.z};
            first = false;
        }
        w.w_lo = std::min(w.w_lo, g.grading.w);
        w.w_hi = std::max(w.w_hi, g.grading.w);
        w.z_lo = std::min(w.z_lo, g.grading.z);
        w.z_hi = std::max(w.z_hi, g.grading.z);
    }
    w.w_lo -= margin;
    w.w_hi += margin;
    w.z_lo -= margin;
    w.z_hi += margin;
    return w;
}

struct UntrustedWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using HilbertTable = std::map<Bigrading, std::size_t>;

inline bool tables_equal(const HilbertTable& a, const HilbertTable& b) {
    auto nonzero = [](const HilbertTable& t) {
        HilbertTable out;
        for (const auto& [g, d] : t)
            if (d) out[g] = d;
        return out;
    };
    return nonzero(a) == nonzero(b);
}

// One basis element of a bidegree slice: generator index times a monomial.
struct SliceElem {
    int gen;
    Monomial mono;
};

class Slice {
public:
    Slice() = default;
    Slice(const Complex& c, Flavor f, Bigrading at) : at_(at) {
        for (int i = 0; i < (int)c.size(); ++i) {
            Bigrading need = at - c.gens()[i].grading;  // = (-2a, -2b)
            if (need.w > 0 || need.z > 0 || need.w % 2 || need.z % 2) continue;
            Monomial m{(unsigned)(-need.w / 2), (unsigned)(-need.z / 2)};
            if (!monomial_survives(m, f)) continue;
            pos_.emplace(i, (int)basis_.size());
            basis_.push_back({i, m});
        }
    }

    Bigrading at() const { return at_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<SliceElem>& basis() const { return basis_; }
    std::optional<int> position(int gen) const {
        auto it = pos_.find(gen);
        if (it == pos_.end()) return std::nullopt;
        return it->second;
    }

private:
    Bigrading at_;
    std::vector<SliceElem> basis_;
    std::map<int, int> pos_;
};

// Matrix of an EntryMap-described map between two slices (the entry poly gets
// multiplied by the source monomial, specialized, and re-expanded).
inline gf2::Matrix slice_matrix(Flavor f, const EntryMap& entries, const Slice& from,
                                const Slice& to) {
    gf2::Matrix m(to.dim(), from.dim());
    for (std::size_t j = 0; j < from.dim(); ++j) {
        const SliceElem& e = from.basis()[j];
        for (const auto& [key, poly] : entries) {
            if (key.second != e.gen) continue;
            for (Monomial t : poly.terms()) {
                Monomial prod = t * e.mono;
                if (!monomial_survives(prod, f)) continue;
                auto row = to.position(key.first);
                if (!row) continue;  // cannot happen for homogeneous maps
                m.flip((std::size_t)*row, j);
            }
        }
    }
    return m;
}

inline gf2::Matrix diff_matrix(const Complex& c, Flavor f, const Slice& from, const Slice& to) {
    return slice_matrix(f, c.diff(), from, to);
}

// Homology of one bidegree slice with an explicit basis of coset
// representatives and projection onto homology coordinates.
class HomologySlice {
public:
    HomologySlice() : boundaries_(0) {}
    HomologySlice(const Complex& c, Flavor f, Bigrading at)
        : chain_(c, f, at),
          above_(c, f, at + Bigrading{1, 1}),
          below_(c, f, at - Bigrading{1, 1}),
          boundaries_(chain_.dim()) {
        gf2::Matrix d_out = diff_matrix(c, f, chain_, below_);
        gf2::Matrix d_in = diff_matrix(c, f, above_, chain_);
        for (std::size_t j = 0; j < above_.dim(); ++j) boundaries_.add(d_in.col(j));
        for (const auto& cyc : gf2::nullspace(d_out)) {
            if (!boundaries_.contains(cyc)) {
                // Keep a residual form for projection, but remember the cycle.
                reps_.push_back(cyc);
                boundaries_.add(cyc);
            }
        }
        // boundaries_ now spans cycles; rebuild a clean boundary space for
        // projection.
        proj_ = gf2::ColumnSpace(chain_.dim());
        for (std::size_t j = 0; j < above_.dim(); ++j) proj_->add(d_in.col(j));
    }

    const Slice& chain() const { return chain_; }
    std::size_t dim() const { return reps_.size(); }
    const std::vector<std::vector<bool>>& reps() const { return reps_; }

    // Expresses a cycle vector in homology coordinates.
    std::vector<bool> project(std::vector<bool> cycle) const {
        std::vector<bool> coords(reps_.size(), false);
        std::vector<bool> residual = proj_->reduce(std::move(cycle));
        // Solve residual = sum reps (the reps are independent mod boundaries).
        gf2::Matrix m(chain_.dim(), reps_.size());
        for (std::size_t j = 0; j < reps_.size(); ++j) m.set_col(j, proj_->reduce(reps_[j]));
        auto sol = gf2::solve(m, residual);
        if (!sol) throw std::logic_error("project: vector is not a cycle mod boundaries");
        return *sol;
    }

private:
    Slice chain_, above_, below_;
    gf2::ColumnSpace boundaries_;
    std::optional<gf2::ColumnSpace> proj_;
    std::vector<std::vector<bool>> reps_;
};

enum class InducedOp { mul_u, mul_v, phi, psi };

inline Bigrading op_bidegree(InducedOp op) {
    switch (op) {
        case InducedOp::mul_u: return {-2, 0};
        case InducedOp::mul_v: return {0, -2};
        case InducedOp::phi: return {1, -1};
        case InducedOp::psi: return {-1, 1};
    }
    return {};
}

inline const char* op_name(InducedOp op) {
    switch (op) {
        case InducedOp::mul_u: return "mul_u";
        case InducedOp::mul_v: return "mul_v";
        case InducedOp::phi: return "phi";
        case InducedOp::psi: return "psi";
    }
    return "?";
}

// Chain-level entries of an induced operation.
inline EntryMap op_entries(const Complex& c, InducedOp op) {
    EntryMap e;
    switch (op) {
        case InducedOp::mul_u:
            for (int i = 0; i < (int)c.size(); ++i) e[{i, i}] = poly_u();
            break;
        case InducedOp::mul_v:
            for (int i = 0; i < (int)c.size(); ++i) e[{i, i}] = poly_v();
            break;
        case InducedOp::phi: return phi(c).entries;
        case InducedOp::psi: return psi(c).entries;
    }
    return e;
}

class HomologyEngine {
public:
    HomologyEngine(const Complex& c, Flavor f) : c_(c), f_(f) {}

    const Complex& complex() const { return c_; }
    Flavor flavor() const { return f_; }

    const HomologySlice& at(Bigrading g) const {
        auto it = cache_.find(g);
        if (it == cache_.end()) it = cache_.emplace(g, HomologySlice(c_, f_, g)).first;
        return it->second;
    }

    std::size_t chain_dim(Bigrading g) const { return Slice(c_, f_, g).dim(); }

    // Induced map on homology between two slices, from chain-level entries of
    // homogeneous bidegree delta.
    gf2::Matrix induced(const EntryMap& entries, Bigrading from, Bigrading delta) const {
        const HomologySlice& src = at(from);
        const HomologySlice& dst = at(from + delta);
        gf2::Matrix chain_map =
            slice_matrix(f_, entries, src.chain(), Slice(c_, f_, from + delta));
        // note: Slice(c_, f_, from+delta) equals dst.chain() basis-wise
        gf2::Matrix out(dst.dim(), src.dim());
        for (std::size_t j = 0; j < src.dim(); ++j) {
            auto img = chain_map.apply(src.reps()[j]);
            auto coords = dst.project(std::move(img));
            for (std::size_t i = 0; i < coords.size(); ++i)
                if (coords[i]) out.set(i, j, true);
        }
        return out;
    }

private:
    const Complex& c_;
    Flavor f_;
    mutable std::map<Bigrading, HomologySlice> cache_;
};

// --- the public per-window operations ---------------------------------------

inline std::vector<Bigrading> trusted_region(const Window& w, Bigrading margin_lo,
                                             Bigrading margin_hi) {
    std::vector<Bigrading> out;
    for (long long gw = w.w_lo; gw <= w.w_hi; ++gw)
        for (long long gz = w.z_lo; gz <= w.z_hi; ++gz) {
            Bigrading g{gw, gz};
            if (w.contains(g + margin_lo) && w.contains(g + margin_hi)) out.push_back(g);
        }
    return out;
}

inline std::vector<Bigrading> homology_trusted(const Window& w) {
    return trusted_region(w, {-1, -1}, {1, 1});
}

// Restriction of a table to a region (used when comparing tables whose
// trusted interiors differ).
inline HilbertTable restrict_table(const HilbertTable& t, const std::vector<Bigrading>& region) {
    HilbertTable out;
    for (Bigrading g : region) {
        auto it = t.find(g);
        if (it != t.end() && it->second) out[g] = it->second;
    }
    return out;
}

inline HilbertTable chain_dims(const Complex& c, Flavor f, const Window& w) {
    HilbertTable t;
    for (long long gw = w.w_lo; gw <= w.w_hi; ++gw)
        for (long long gz = w.z_lo; gz <= w.z_hi; ++gz) {
            std::size_t d = Slice(c, f, {gw, gz}).dim();
            if (d) t[{gw, gz}] = d;
        }
    return t;
}

inline HilbertTable homology_table(const Complex& c, Flavor f, const Window& w) {
    auto region = homology_trusted(w);
    if (region.empty()) throw UntrustedWindowError("window too small: empty trusted interior");
    HomologyEngine eng(c, f);
    HilbertTable t;
    for (Bigrading g : region) {
        std::size_t d = eng.at(g).dim();
        if (d) t[g] = d;
    }
    return t;
}

// Per-bidegree rank of the induced action on homology.  The trusted region
// for an op of bidegree delta needs homology at both endpoints.
inline HilbertTable induced_action_rank(const Complex& c, Flavor f, InducedOp op,
                                        const Window& w) {
    Bigrading delta = op_bidegree(op);
    std::vector<Bigrading> region;
    for (Bigrading g : homology_trusted(w))
        if (w.contains(g + delta + Bigrading{1, 1}) && w.contains(g + delta + Bigrading{-1, -1}))
            region.push_back(g);
    if (region.empty()) throw UntrustedWindowError("window too small for induced action");
    HomologyEngine eng(c, f);
    EntryMap entries = op_entries(c, op);
    HilbertTable t;
    for (Bigrading g : region) {
        if (eng.at(g).dim() == 0) continue;
        std::size_t r = gf2::rank(eng.induced(entries, g, delta));
        if (r) t[g] = r;
    }
    return t;
}

// A formal sum of generator * monomial summands.
using FormalChain = std::vector<std::pair<std::string, Monomial>>;

// True iff the (checked) cycle is a boundary after flavor specialization.
inline bool is_boundary(const Complex& c, Flavor f, const FormalChain& cycle, const Window& w) {
    // Group summands by bidegree.
    std::map<Bigrading, std::map<std::pair<int, Monomial>, bool>> by_deg;
    for (const auto& [name, mono] : cycle) {
        if (!monomial_survives(mono, f)) continue;
        int gi = c.index_of(name);
        Bigrading g = c.gens()[gi].grading + monomial_bidegree(mono);
        auto& slot = by_deg[g][{gi, mono}];
        slot = !slot;
    }
    for (auto& [g, terms] : by_deg) {
        if (!w.contains(g) || !w.contains(g + Bigrading{1, 1}) || !w.contains(g - Bigrading{1, 1}))
            throw UntrustedWindowError("cycle touches bidegrees outside the trusted window");
        Slice here(c, f, g);
        Slice below(c, f, g - Bigrading{1, 1});
        std::vector<bool> vec(here.dim(), false);
        for (const auto& [gm, present] : terms) {
            if (!present) continue;
            auto pos = here.position(gm.first);
            if (!pos || !(here.basis()[*pos].mono == gm.second))
                throw std::invalid_argument("summand does not lie in its bidegree slice");
            vec[*pos] = vec[*pos] != true;
        }
        // Cycle check: d(vec) must vanish.
        gf2::Matrix d_out = diff_matrix(c, f, here, below);
        auto img = d_out.apply(vec);
        for (std::size_t i = 0; i < img.size(); ++i)
            if (img[i])
                throw std::invalid_argument(
                    "not a cycle: d-image has term on " +
                    c.gens()[below.basis()[i].gen].name + " " + to_string(below.basis()[i].mono));
        Slice above(c, f, g + Bigrading{1, 1});
        gf2::Matrix d_in = diff_matrix(c, f, above, here);
        if (!gf2::solve(d_in, vec)) return false;
    }
    return true;
}

} // namespace hflink
