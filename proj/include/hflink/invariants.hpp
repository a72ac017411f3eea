#pragma once

// Link invariants built on top of homology: HF as the common kernel of the
// basepoint actions, the weak groups HF_w = HF /\ v*HFL, torus-knot
// closed-form comparators, and slice-disk trace classes.

#include "hflink/complex.hpp"
#include "hflink/decomp.hpp"
#include "hflink/homology.hpp"

namespace hflink {

// --- endomorphism algebra -----------------------------------------------------

inline EntryMap compose_entries(const EntryMap& a, const EntryMap& b) {
    // (a o b)[t][s] = sum_m a[t][m] * b[m][s]
    EntryMap out;
    for (const auto& [kb, pb] : b)
        for (const auto& [ka, pa] : a) {
            if (ka.second != kb.first) continue;
            Poly& e = out[{ka.first, kb.second}];
            e += pa * pb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

inline EntryMap add_entries(const EntryMap& a, const EntryMap& b) {
    EntryMap out = a;
    for (const auto& [k, p] : b) {
        Poly& e = out[k];
        e += p;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

inline bool is_chain_map(const Complex& c, const EntryMap& f) {
    return compose_entries(c.diff(), f) == compose_entries(f, c.diff());
}

inline bool entries_homogeneous(const Complex& c, const EntryMap& e, Bigrading bidegree) {
    for (const auto& [key, poly] : e) {
        for (Monomial m : poly.terms())
            if (c.gens()[key.first].grading + monomial_bidegree(m) !=
                c.gens()[key.second].grading + bidegree)
                return false;
    }
    return true;
}

// --- pointed models -----------------------------------------------------------

// A complex together with one pair of basepoint action maps per recorded
// basepoint pair.  For a knot model the single pair is (phi, psi); each
// quasi-stabilization appends the new block maps and extends the old ones
// block-diagonally.
struct PointedModel {
    Complex complex;
    std::vector<Endomorphism> phi_maps;
    std::vector<Endomorphism> psi_maps;

    static PointedModel knot(Complex c) {
        PointedModel m;
        m.phi_maps = {phi(c)};
        m.psi_maps = {psi(c)};
        m.complex = std::move(c);
        m.complex.set_basepoint_pairs(1);
        return m;
    }

    PointedModel quasi_stabilized() const {
        QuasiStabilization qs = quasi_stabilize(complex);
        PointedModel out;
        std::size_t n = complex.size();
        for (const auto& e : phi_maps) out.phi_maps.push_back(block_diagonal(e, n));
        for (const auto& e : psi_maps) out.psi_maps.push_back(block_diagonal(e, n));
        out.phi_maps.push_back(qs.phi_new);
        out.psi_maps.push_back(qs.psi_new);
        out.complex = std::move(qs.complex);
        return out;
    }

    void check() const {
        require_valid(complex);
        if (phi_maps.size() != psi_maps.size() ||
            (int)phi_maps.size() != complex.basepoint_pairs())
            throw std::invalid_argument("pointed model: one (phi,psi) pair per basepoint pair");
        for (const auto& e : phi_maps) {
            if (!is_chain_map(complex, e.entries))
                throw std::invalid_argument("phi map " + e.name + " is not a chain map");
            if (!entries_homogeneous(complex, e.entries, {1, -1}))
                throw std::invalid_argument("phi map " + e.name + " is not of bidegree (1,-1)");
        }
        for (const auto& e : psi_maps) {
            if (!is_chain_map(complex, e.entries))
                throw std::invalid_argument("psi map " + e.name + " is not a chain map");
            if (!entries_homogeneous(complex, e.entries, {-1, 1}))
                throw std::invalid_argument("psi map " + e.name + " is not of bidegree (-1,1)");
        }
    }
};

// --- HF and HF_w, degreewise ---------------------------------------------------

namespace detail_hf {

// Homology-coordinate matrices of all phi actions out of bidegree g.
inline gf2::Matrix stacked_phi(const HomologyEngine& eng, const PointedModel& m, Bigrading g) {
    std::size_t src_dim = eng.at(g).dim();
    std::size_t rows = 0;
    std::vector<gf2::Matrix> blocks;
    for (const auto& e : m.phi_maps) {
        blocks.push_back(eng.induced(e.entries, g, {1, -1}));
        rows += blocks.back().rows();
    }
    gf2::Matrix out(rows, src_dim);
    std::size_t r0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b.get(i, j)) out.set(r0 + i, j, true);
        r0 += b.rows();
    }
    return out;
}

inline std::vector<Bigrading> hf_region(const Window& w) {
    std::vector<Bigrading> out;
    for (Bigrading g : homology_trusted(w)) {
        Bigrading t = g + Bigrading{1, -1};
        if (w.contains(t + Bigrading{1, 1}) && w.contains(t - Bigrading{1, 1})) out.push_back(g);
    }
    if (out.empty()) throw UntrustedWindowError("window too small for HF");
    return out;
}

inline std::vector<Bigrading> hf_w_region(const Window& w) {
    std::vector<Bigrading> out;
    for (Bigrading g : hf_region(w)) {
        Bigrading s = g + Bigrading{0, 2};
        if (w.contains(s + Bigrading{1, 1}) && w.contains(s - Bigrading{1, 1})) out.push_back(g);
    }
    if (out.empty()) throw UntrustedWindowError("window too small for HF_w");
    return out;
}

} // namespace detail_hf

inline std::vector<Bigrading> hf_trusted(const Window& w) { return detail_hf::hf_region(w); }
inline std::vector<Bigrading> hf_w_trusted(const Window& w) { return detail_hf::hf_w_region(w); }

// Per-bidegree dimension of the common kernel of the induced phi actions.
inline HilbertTable hf_table(const PointedModel& m, Flavor f, const Window& w) {
    HomologyEngine eng(m.complex, f);
    HilbertTable t;
    for (Bigrading g : detail_hf::hf_region(w)) {
        std::size_t h = eng.at(g).dim();
        if (h == 0) continue;
        std::size_t dim = gf2::nullspace(detail_hf::stacked_phi(eng, m, g)).size();
        if (dim) t[g] = dim;
    }
    return t;
}

// Per-bidegree dimension of HF /\ image(mul_v).
inline HilbertTable hf_w_table(const PointedModel& m, Flavor f, const Window& w) {
    if (f == Flavor::hat)
        throw std::invalid_argument("weak groups are defined for the minus and circ flavors");
    HomologyEngine eng(m.complex, f);
    EntryMap mul_v = op_entries(m.complex, InducedOp::mul_v);
    HilbertTable t;
    for (Bigrading g : detail_hf::hf_w_region(w)) {
        std::size_t h = eng.at(g).dim();
        if (h == 0) continue;
        auto kernel = gf2::nullspace(detail_hf::stacked_phi(eng, m, g));
        gf2::Matrix vmap = eng.induced(mul_v, g + Bigrading{0, 2}, {0, -2});
        gf2::ColumnSpace image_space(h), joint(h);
        std::size_t idim = 0;
        for (const auto& x : kernel) joint.add(x);
        for (std::size_t j = 0; j < vmap.cols(); ++j) {
            if (image_space.add(vmap.col(j))) ++idim;
            joint.add(vmap.col(j));
        }
        std::size_t dim = kernel.size() + idim - joint.rank();
        if (dim) t[g] = dim;
    }
    return t;
}

// --- HF and HF_w as circ-flavor module decompositions ---------------------------

namespace detail_hf {

struct CircPresentations {
    std::map<long long, std::vector<int>> lines;
    std::map<long long, vmod::LinePresentation> pres;

    const vmod::LinePresentation& at(const Complex& c, long long w) {
        auto it = pres.find(w);
        if (it == pres.end()) it = pres.emplace(w, vmod::present_line(c, lines, w)).first;
        return it->second;
    }
};

// Generators of the common phi-kernel submodule on one line.
inline VMat hf_line_generators(const PointedModel& m, CircPresentations& cp, long long w) {
    const auto& pres = cp.at(m.complex, w);
    std::size_t k = pres.kernel.cols();
    static const std::vector<int> kEmpty;
    auto gens_of = [&](long long lw) -> const std::vector<int>& {
        auto it = cp.lines.find(lw);
        return it == cp.lines.end() ? kEmpty : it->second;
    };
    std::vector<std::pair<VMat, VMat>> conditions;
    if (!gens_of(w + 1).empty()) {
        const auto& target = cp.at(m.complex, w + 1);
        for (const auto& e : m.phi_maps) {
            VMat p_chain = vmod::line_matrix(e.entries, pres.chain_gens, gens_of(w + 1));
            VMat p = vsolve(target.kernel, p_chain * pres.kernel);
            conditions.emplace_back(std::move(p), target.relations);
        }
    }
    return vmod::submodule_kernel(k, conditions);
}

} // namespace detail_hf

inline ModuleDecomp hf_circ_decomp(const PointedModel& m) {
    detail_hf::CircPresentations cp{vmod::gr_w_lines(m.complex), {}};
    ModuleDecomp out;
    for (const auto& [w, gens] : cp.lines) {
        const auto& pres = cp.at(m.complex, w);
        VMat g = detail_hf::hf_line_generators(m, cp, w);
        for (auto s : vmod::decompose_subquotient(g, pres.relations, pres.kernel_gradings))
            out.summands.push_back(s);
    }
    out.normalize();
    return out;
}

inline ModuleDecomp hf_w_circ_decomp(const PointedModel& m) {
    detail_hf::CircPresentations cp{vmod::gr_w_lines(m.complex), {}};
    ModuleDecomp out;
    for (const auto& [w, gens] : cp.lines) {
        const auto& pres = cp.at(m.complex, w);
        std::size_t k = pres.kernel.cols();
        VMat g = detail_hf::hf_line_generators(m, cp, w);
        // v*H + im(X), lifted: columns v*e_i and the relation columns.
        VMat vlift(k, k + pres.relations.cols());
        for (std::size_t i = 0; i < k; ++i) vlift.at(i, i) = VPoly::monomial(1);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < pres.relations.cols(); ++j)
                vlift.at(i, k + j) = pres.relations.at(i, j);
        VMat gw = vmod::submodule_intersection(k, g, vlift);
        for (auto s : vmod::decompose_subquotient(gw, pres.relations, pres.kernel_gradings))
            out.summands.push_back(s);
    }
    out.normalize();
    return out;
}

// --- torus-knot closed forms ----------------------------------------------------

struct TorusClosedForm {
    std::vector<long long> exponents;
    ModuleDecomp circ_w;
    std::size_t hfl_hat_dim = 0;
    std::size_t hf_hat_dim = 0;
};

inline TorusClosedForm torus_closed_form(long long p, long long q) {
    TorusClosedForm out;
    out.exponents = torus_knot_exponents(p, q);
    const auto& a = out.exponents;
    std::size_t n = (a.size() - 1) / 2;
    auto c = staircase_grading_sequence(a);
    out.circ_w.summands.push_back({true, {0, -2 * a[0] - 2}, 0});
    for (std::size_t i = 1; i <= n; ++i) {
        long long order = a[2 * i - 1] - a[2 * i] - 1;
        if (order >= 1)
            out.circ_w.summands.push_back({false, {-c[i], -c[n - i] - 2}, (unsigned)order});
    }
    out.circ_w.normalize();
    out.hfl_hat_dim = 2 * n + 1;
    std::size_t extra = 0;
    for (std::size_t j = 1; j <= n; ++j)
        if (a[j - 1] - a[j] > 1) ++extra;
    out.hf_hat_dim = (n + 1) + extra;
    return out;
}

// Pipeline outputs of a staircase model that the closed form predicts.
struct TorusPipeline {
    ModuleDecomp circ_w;
    std::size_t hfl_hat_dim = 0;
    std::size_t hf_hat_dim = 0;
};

inline TorusPipeline torus_pipeline(long long p, long long q) {
    PointedModel m = PointedModel::knot(staircase(p, q));
    TorusPipeline out;
    out.circ_w = hf_w_circ_decomp(m);
    Window w = window_for(m.complex);
    for (const auto& [g, d] : homology_table(m.complex, Flavor::hat, w)) out.hfl_hat_dim += d;
    for (const auto& [g, d] : hf_table(m, Flavor::hat, w)) out.hf_hat_dim += d;
    return out;
}

// --- comparisons up to one global shift ------------------------------------------

struct CompareResult {
    bool match = false;
    Bigrading shift;  // expected = actual + shift
    std::string diff;
};

inline CompareResult compare_decomps(const ModuleDecomp& actual, const ModuleDecomp& expected) {
    auto shifted = [](const ModuleDecomp& d, Bigrading s) {
        ModuleDecomp out = d;
        for (auto& x : out.summands) x.position = x.position + s;
        out.normalize();
        return out;
    };
    ModuleDecomp a = actual, e = expected;
    a.normalize();
    e.normalize();
    if (a.summands.size() != e.summands.size()) {
        return {false, {0, 0},
                "summand counts differ: " + std::to_string(a.summands.size()) + " vs " +
                    std::to_string(e.summands.size())};
    }
    if (a.summands.empty()) return {true, {0, 0}, ""};
    // Candidate shifts: align any actual summand with any expected one of the
    // same kind; try the zero shift first.
    std::vector<Bigrading> candidates{{0, 0}};
    for (const auto& sa : a.summands)
        for (const auto& se : e.summands)
            if (sa.free == se.free && sa.order == se.order)
                candidates.push_back(se.position - sa.position);
    for (Bigrading s : candidates) {
        if (shifted(a, s) == e) return {true, s, ""};
    }
    return {false, {0, 0}, "no global shift matches: actual " + to_string(a) +
                               " vs expected " + to_string(e)};
}

inline CompareResult compare_tables(const HilbertTable& actual, const HilbertTable& expected) {
    auto nonzero = [](const HilbertTable& t) {
        HilbertTable out;
        for (const auto& [g, d] : t)
            if (d) out[g] = d;
        return out;
    };
    HilbertTable a = nonzero(actual), e = nonzero(expected);
    if (a.size() != e.size())
        return {false, {0, 0}, "support sizes differ"};
    if (a.empty()) return {true, {0, 0}, ""};
    Bigrading s = e.begin()->first - a.begin()->first;
    HilbertTable shifted;
    for (const auto& [g, d] : a) shifted[g + s] = d;
    if (shifted == e) return {true, s, ""};
    return {false, {0, 0}, "tables differ beyond a global shift"};
}

struct TorusVerify {
    CompareResult circ_w;
    bool hfl_hat_ok = false;
    bool hf_hat_ok = false;
    bool ok() const { return circ_w.match && hfl_hat_ok && hf_hat_ok; }
};

inline TorusVerify torus_verify(const TorusPipeline& actual, const TorusClosedForm& expected) {
    TorusVerify v;
    v.circ_w = compare_decomps(actual.circ_w, expected.circ_w);
    v.hfl_hat_ok = actual.hfl_hat_dim == expected.hfl_hat_dim;
    v.hf_hat_ok = actual.hf_hat_dim == expected.hf_hat_dim;
    return v;
}

// --- trace classes ----------------------------------------------------------------

struct TraceClass {
    Complex ambient;       // C (x) C*
    FormalChain cycle;
    Bigrading grading;
};

inline FormalChain apply_entries(const Complex& c, const EntryMap& e, const FormalChain& x) {
    std::map<std::pair<std::string, Monomial>, bool> acc;
    for (const auto& [name, mono] : x) {
        int src = c.index_of(name);
        for (const auto& [key, poly] : e) {
            if (key.second != src) continue;
            for (Monomial t : poly.terms()) {
                auto& slot = acc[{c.gens()[key.first].name, t * mono}];
                slot = !slot;
            }
        }
    }
    FormalChain out;
    for (const auto& [k, present] : acc)
        if (present) out.push_back(k);
    return out;
}

// Trace of a chain endomorphism f of C: sum_g f(g) (x) g* inside C (x) C*.
inline TraceClass trace_class(const Complex& c, const Endomorphism& f) {
    if (!is_chain_map(c, f.entries))
        throw std::invalid_argument("trace_class: the given map is not a chain map");
    if (!entries_homogeneous(c, f.entries, f.bidegree))
        throw std::invalid_argument("trace_class: map is not homogeneous of its bidegree");
    TraceClass out{tensor(c, dual(c)), {}, f.bidegree};
    std::map<std::pair<std::string, Monomial>, bool> acc;
    for (std::size_t g = 0; g < c.size(); ++g) {
        for (const auto& [key, poly] : f.entries) {
            if (key.second != (int)g) continue;
            std::string name = c.gens()[key.first].name + "." + c.gens()[g].name + "*";
            for (Monomial m : poly.terms()) {
                auto& slot = acc[{name, m}];
                slot = !slot;
            }
        }
    }
    for (const auto& [k, present] : acc)
        if (present) out.cycle.push_back(k);
    FormalChain image = apply_entries(out.ambient, out.ambient.diff(), out.cycle);
    if (!image.empty()) throw std::logic_error("trace class is not closed");
    return out;
}

// True iff the two trace classes differ in homology for the given flavor.
inline bool distinguish(const TraceClass& t1, const TraceClass& t2, Flavor f, const Window& w) {
    if (t1.grading != t2.grading)
        throw std::invalid_argument("distinguish: bigrading mismatch");
    if (!structurally_equal(t1.ambient, t2.ambient))
        throw std::invalid_argument("distinguish: different ambient complexes");
    std::map<std::pair<std::string, Monomial>, bool> acc;
    for (const auto& e : t1.cycle) acc[e] = !acc[e];
    for (const auto& e : t2.cycle) acc[e] = !acc[e];
    FormalChain diff;
    for (const auto& [k, present] : acc)
        if (present) diff.push_back(k);
    if (diff.empty()) return false;
    return !is_boundary(t1.ambient, f, diff, w);
}

} // namespace hflink
