#pragma once

// Built-in fixture registry: the standard model complexes and chain maps,
// resolvable by name ("unknot", "trefoil", "figure_eight", "fig8_dual",
// "torus:p,q", or a path to a fixture file).  Every built-in is validated at
// load time.

#include <fstream>

#include "hflink/complex_io.hpp"
#include "hflink/invariants.hpp"

namespace hflink {

inline Endomorphism fig8_rollspin_map(const Complex& f8) {
    Endomorphism e{"rollspin", {0, 0}, {}};
    for (int i = 0; i < (int)f8.size(); ++i) e.add(i, i, Poly::one());
    e.add(f8.index_of("x0"), f8.index_of("y1"), Poly::one());
    return e;
}

struct ResolvedFixture {
    Complex complex;
    std::vector<ChainMapFixture> maps;  // from file fixtures
    std::string source;                 // builtin name or file path
};

inline bool is_builtin_fixture(const std::string& name) {
    return name == "unknot" || name == "trefoil" || name == "figure_eight" ||
           name == "fig8_dual" || name.rfind("torus:", 0) == 0 ||
           name.rfind("staircase:", 0) == 0;
}

inline ResolvedFixture resolve_fixture(const std::string& name) {
    ResolvedFixture out;
    out.source = name;
    if (name == "unknot") {
        out.complex = unknot_complex();
    } else if (name == "trefoil") {
        out.complex = staircase(2, 3);
    } else if (name == "figure_eight") {
        out.complex = figure_eight_complex();
    } else if (name == "fig8_dual") {
        out.complex = dual(figure_eight_complex());
    } else if (name.rfind("torus:", 0) == 0) {
        auto rest = name.substr(6);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("torus fixture must look like torus:p,q");
        out.complex = staircase(std::stoll(rest.substr(0, comma)),
                                std::stoll(rest.substr(comma + 1)));
    } else if (name.rfind("staircase:", 0) == 0) {
        std::vector<long long> a;
        std::string rest = name.substr(10);
        std::size_t start = 0;
        while (start <= rest.size()) {
            auto comma = rest.find(',', start);
            a.push_back(std::stoll(
                rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        out.complex = staircase_from_exponents(a, name);
    } else {
        std::ifstream in(name);
        if (!in) throw std::invalid_argument("no builtin fixture or readable file '" + name + "'");
        auto fx = parse_complex_fixture(in);
        out.complex = std::move(fx.complex);
        out.maps = std::move(fx.maps);
    }
    require_valid(out.complex);
    return out;
}

// Resolves a chain-map fixture: the builtin name or "<file>:<map name>" (a
// file containing map lines; a bare file with a single map also works).
inline Endomorphism resolve_map(const std::string& name, const Complex& cx) {
    if (name == "fig8_rollspin_map") return fig8_rollspin_map(cx);
    if (name == "identity") {
        Endomorphism e{"identity", {0, 0}, {}};
        for (int i = 0; i < (int)cx.size(); ++i) e.add(i, i, Poly::one());
        return e;
    }
    std::string path = name, wanted;
    auto colon = name.rfind(':');
    if (colon != std::string::npos && colon > 1) {  // allow windows-free paths; ':' splits map name
        path = name.substr(0, colon);
        wanted = name.substr(colon + 1);
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("no builtin map or readable file '" + name + "'");
    auto fx = parse_complex_fixture(in);
    for (const auto& mf : fx.maps) {
        if (!wanted.empty() && mf.name != wanted) continue;
        // translate the fixture map onto cx by generator names
        Endomorphism e{mf.name, {0, 0}, {}};
        for (const auto& [src, terms] : mf.images) {
            int s = cx.index_of(src);
            for (const auto& [coeff, tgt] : terms) e.add(cx.index_of(tgt), s, Poly(coeff));
        }
        return e;
    }
    throw std::invalid_argument("map '" + wanted + "' not found in " + path);
}

} // namespace hflink
