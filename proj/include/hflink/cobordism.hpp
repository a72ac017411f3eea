#pragma once

// Formal evaluation of link-cobordism words.  Every elementary piece acts on
// the weak group as a power of v times the identity; a word evaluates to the
// product of its token scalars, with Elementary/ReverseElementary tokens
// required to pair up by id.  Also: the twist-cobordism endomorphism, the
// cobordism bidegree formula and the circ-module shapes of the standard small
// examples.

#include <cstdint>
#include <istream>
#include <sstream>

#include "hflink/invariants.hpp"

namespace hflink {

struct CobordismToken {
    enum class Kind {
        merge,
        split,
        point_shift,
        twist,
        perturbation,
        deperturbation,
        elementary,
        reverse_elementary,
        ribbon_pair,
        compression,
    } kind;
    long long pairs = 0;  // twist: number of basepoint pairs rotated
    std::string id;       // elementary / reverse_elementary / ribbon_pair
    friend bool operator==(const CobordismToken&, const CobordismToken&) = default;
};

using CobordismWord = std::vector<CobordismToken>;

struct ScalarResult {
    unsigned long long v_power = 0;
    bool hat_zero() const { return v_power >= 1; }
    std::string text() const { return "v^" + std::to_string(v_power); }
    friend bool operator==(const ScalarResult&, const ScalarResult&) = default;
};

// Scalar rules: merge -> Id, split -> v, point-shift -> v, twist -> Id on HF,
// perturbation and deperturbation -> Id on HF_w, a matched
// elementary/reverse pair -> v, a ribbon/co-ribbon bracket -> Id, and a
// compression marker -> v (the uncompressed surface evaluates to v times the
// compressed one).
inline ScalarResult evaluate_word(const CobordismWord& word) {
    ScalarResult out;
    std::map<std::string, long long> open_elementary;
    for (const auto& t : word) {
        switch (t.kind) {
            case CobordismToken::Kind::merge: break;
            case CobordismToken::Kind::split: out.v_power += 1; break;
            case CobordismToken::Kind::point_shift: out.v_power += 1; break;
            case CobordismToken::Kind::twist:
                if (t.pairs < 0) throw std::invalid_argument("twist: negative pair count");
                break;
            case CobordismToken::Kind::perturbation: break;
            case CobordismToken::Kind::deperturbation: break;
            case CobordismToken::Kind::elementary: open_elementary[t.id] += 1; break;
            case CobordismToken::Kind::reverse_elementary: open_elementary[t.id] -= 1; break;
            case CobordismToken::Kind::ribbon_pair: break;
            case CobordismToken::Kind::compression: out.v_power += 1; break;
        }
    }
    for (const auto& [id, bal] : open_elementary) {
        if (bal != 0)
            throw std::invalid_argument("unpaired elementary cobordism id '" + id + "'");
        // each matched pair contributes one factor of v
    }
    for (const auto& t : word)
        if (t.kind == CobordismToken::Kind::elementary) out.v_power += 1;
    return out;
}

// Checks the compression relation: the word for S must be the word for S_D
// plus exactly one Compression marker, and then eval(S) = v * eval(S_D).
inline bool compression_compare(const CobordismWord& with_s, const CobordismWord& with_s_d) {
    CobordismWord stripped;
    int markers = 0;
    for (const auto& t : with_s) {
        if (t.kind == CobordismToken::Kind::compression && markers == 0) {
            ++markers;
            continue;
        }
        stripped.push_back(t);
    }
    if (markers != 1 || stripped != with_s_d)
        throw std::invalid_argument(
            "compression_compare: words must agree except for one compression marker");
    return evaluate_word(with_s).v_power == evaluate_word(with_s_d).v_power + 1;
}

// --- the twist endomorphism -------------------------------------------------------

// Chain-level twist map: sum over subsets I = {j_1 < ... < j_m} of the given
// pair indices of Psi_{j_1} Phi_{j_1} ... Psi_{j_m} Phi_{j_m} (the empty
// subset contributes the identity).
inline Endomorphism twist_endomorphism(const PointedModel& m, std::vector<std::size_t> selection) {
    for (std::size_t j : selection)
        if (j >= m.phi_maps.size())
            throw std::invalid_argument("twist: missing basepoint action maps");
    std::size_t n = m.complex.size();
    EntryMap identity;
    for (std::size_t i = 0; i < n; ++i) identity[{(int)i, (int)i}] = Poly::one();
    EntryMap total;
    std::size_t k = selection.size();
    if (k > 20) throw std::invalid_argument("twist: too many pairs");
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        EntryMap term = identity;
        for (std::size_t j = 0; j < k; ++j) {
            if (!(mask & (1u << j))) continue;
            std::size_t pair = selection[j];
            // append Psi_j Phi_j on the right
            term = compose_entries(term, compose_entries(m.psi_maps[pair].entries,
                                                         m.phi_maps[pair].entries));
        }
        total = add_entries(total, term);
    }
    Endomorphism e{"twist", {0, 0}, {}};
    e.entries = std::move(total);
    return e;
}

// All pairs of the model, in order.
inline Endomorphism twist_endomorphism(const PointedModel& m) {
    std::vector<std::size_t> all(m.phi_maps.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return twist_endomorphism(m, all);
}

// Checks that the induced twist map restricted to the common kernel of the
// phi actions is the identity on every trusted bidegree.
inline bool twist_is_identity_on_hf(const PointedModel& m, Flavor f, const Window& w) {
    Endomorphism tw = twist_endomorphism(m);
    HomologyEngine eng(m.complex, f);
    for (Bigrading g : hf_trusted(w)) {
        if (eng.at(g).dim() == 0) continue;
        auto kernel = gf2::nullspace(detail_hf::stacked_phi(eng, m, g));
        if (kernel.empty()) continue;
        gf2::Matrix t = eng.induced(tw.entries, g, {0, 0});
        for (const auto& x : kernel) {
            auto y = t.apply(x);
            if (y != x) return false;
        }
    }
    return true;
}

// --- degree formula ----------------------------------------------------------------

struct DegreeInput {
    long long c1_sq = 0;
    long long chi_x = 0;
    long long sigma_x = 0;
    long long c1_sq_shifted = 0;  // c1 of the Spin^c structure shifted by PD[S]
    long long chi_s = 0;          // Euler characteristic of the surface
};

inline Bigrading cobordism_bidegree(const DegreeInput& in) {
    auto quarter = [](long long c1_sq, long long chi, long long sigma) {
        long long num = c1_sq - 2 * chi - 3 * sigma;
        if (num % 4) throw std::invalid_argument("degree formula: non-integer degree");
        return num / 4;
    };
    long long dw = quarter(in.c1_sq, in.chi_x, in.sigma_x);
    long long dz = quarter(in.c1_sq_shifted, in.chi_x, in.sigma_x) - in.chi_s;
    return {dw, dz};
}

// --- small-example shapes ------------------------------------------------------------

// Circ-flavor HF shapes of the standard small links (regression fixtures).
inline ModuleDecomp fixture_shapes(const std::string& name) {
    auto mk = [](std::vector<Summand> s) {
        ModuleDecomp d{std::move(s)};
        d.normalize();
        return d;
    };
    if (name == "unknot") return mk({{true, {0, 0}, 0}});
    if (name == "hopf") return mk({{true, {0, -2}, 0}, {false, {-2, 0}, 1}});
    if (name == "neg_hopf") return mk({{true, {0, 0}, 0}, {false, {0, 0}, 1}});
    if (name == "trefoil") return mk({{true, {0, -2}, 0}, {false, {-2, 0}, 1}});
    if (name == "neg_trefoil") return mk({{true, {0, -2}, 0}, {false, {1, -1}, 1}});
    throw std::invalid_argument("unknown fixture shape '" + name + "'");
}

// --- word scripts --------------------------------------------------------------------

inline CobordismWord parse_word(std::istream& in) {
    CobordismWord word;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto pos = raw.find('#');
        std::istringstream ls(pos == std::string::npos ? raw : raw.substr(0, pos));
        std::string kw;
        if (!(ls >> kw)) continue;
        CobordismToken t{CobordismToken::Kind::merge, 0, ""};
        if (kw == "merge")
            t.kind = CobordismToken::Kind::merge;
        else if (kw == "split")
            t.kind = CobordismToken::Kind::split;
        else if (kw == "point_shift" || kw == "point-shift" || kw == "pointshift")
            t.kind = CobordismToken::Kind::point_shift;
        else if (kw == "twist") {
            t.kind = CobordismToken::Kind::twist;
            if (!(ls >> t.pairs))
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": twist needs a pair count");
        } else if (kw == "perturbation")
            t.kind = CobordismToken::Kind::perturbation;
        else if (kw == "deperturbation")
            t.kind = CobordismToken::Kind::deperturbation;
        else if (kw == "elementary" || kw == "reverse" || kw == "ribbon") {
            if (!(ls >> t.id))
                throw std::invalid_argument("line " + std::to_string(lineno) + ": " + kw +
                                            " needs an id");
            t.kind = kw == "elementary" ? CobordismToken::Kind::elementary
                     : kw == "reverse"  ? CobordismToken::Kind::reverse_elementary
                                        : CobordismToken::Kind::ribbon_pair;
        } else if (kw == "compression")
            t.kind = CobordismToken::Kind::compression;
        else
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": unknown token '" + kw + "'");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": trailing input '" + extra + "'");
        word.push_back(std::move(t));
    }
    return word;
}

inline CobordismWord parse_word(const std::string& text) {
    std::istringstream in(text);
    return parse_word(in);
}

inline std::string serialize_word(const CobordismWord& word) {
    std::ostringstream out;
    for (const auto& t : word) {
        switch (t.kind) {
            case CobordismToken::Kind::merge: out << "merge"; break;
            case CobordismToken::Kind::split: out << "split"; break;
            case CobordismToken::Kind::point_shift: out << "point_shift"; break;
            case CobordismToken::Kind::twist: out << "twist " << t.pairs; break;
            case CobordismToken::Kind::perturbation: out << "perturbation"; break;
            case CobordismToken::Kind::deperturbation: out << "deperturbation"; break;
            case CobordismToken::Kind::elementary: out << "elementary " << t.id; break;
            case CobordismToken::Kind::reverse_elementary: out << "reverse " << t.id; break;
            case CobordismToken::Kind::ribbon_pair: out << "ribbon " << t.id; break;
            case CobordismToken::Kind::compression: out << "compression"; break;
        }
        out << "\n";
    }
    return out.str();
}

} // namespace hflink
