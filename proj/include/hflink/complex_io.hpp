#pragma once

// Line-oriented fixture format for complexes and chain maps.
//
//   complex <name>
//   gen <name> <gr_w> <gr_z>
//   d <source> -> <target> : <poly literal>
//   map <name> : <source> -> <poly combination of targets>
//   # comment
//
// A "poly combination" is a "+"-separated list of terms, each a product of
// monomial factors followed by a generator name, e.g. "y1 + x0" or
// "u^2 x0 + v y1".  Serialization is canonical: parse(serialize(C)) == C.

#include <istream>
#include <ostream>
#include <sstream>

#include "hflink/complex.hpp"

namespace hflink {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ChainMapFixture {
    std::string name;
    // images[source] = list of (monomial coefficient, target name)
    std::map<std::string, std::vector<std::pair<Monomial, std::string>>> images;
};

struct ComplexFixture {
    Complex complex;
    std::vector<ChainMapFixture> maps;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace detail

inline ComplexFixture parse_complex_fixture(std::istream& in) {
    std::string cx_name;
    std::vector<Generator> gens;
    struct DiffLine {
        std::string source, target, poly;
        int line;
    };
    std::vector<DiffLine> diffs;
    std::vector<std::pair<ChainMapFixture, int>> maps;  // fixture, first line
    std::map<std::string, std::size_t> map_index;

    std::string raw;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_comment(raw);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "complex") {
            if (saw_header) throw ParseError(lineno, "second 'complex' header");
            if (toks.size() != 2) throw ParseError(lineno, "expected: complex <name>");
            cx_name = toks[1];
            saw_header = true;
        } else if (kw == "gen") {
            if (toks.size() != 4) throw ParseError(lineno, "expected: gen <name> <gr_w> <gr_z>");
            try {
                gens.push_back({toks[1], {std::stoll(toks[2]), std::stoll(toks[3])}});
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad grading on generator " + toks[1]);
            }
        } else if (kw == "d") {
            // d <source> -> <target> : <poly>
            auto arrow = line.find("->");
            auto colon = line.find(':');
            if (arrow == std::string::npos || colon == std::string::npos || colon < arrow)
                throw ParseError(lineno, "expected: d <source> -> <target> : <poly>");
            auto src_toks = detail::split_ws(line.substr(1, arrow - 1));
            auto tgt_toks = detail::split_ws(line.substr(arrow + 2, colon - arrow - 2));
            if (src_toks.size() != 1 || tgt_toks.size() != 1)
                throw ParseError(lineno, "expected single source and target names");
            diffs.push_back({src_toks[0], tgt_toks[0], line.substr(colon + 1), lineno});
        } else if (kw == "map") {
            // map <name> : <source> -> <combo>
            auto colon = line.find(':');
            auto arrow = line.find("->", colon == std::string::npos ? 0 : colon);
            if (colon == std::string::npos || arrow == std::string::npos)
                throw ParseError(lineno, "expected: map <name> : <source> -> <combination>");
            auto head = detail::split_ws(line.substr(0, colon));
            if (head.size() != 2) throw ParseError(lineno, "expected: map <name> : ...");
            auto src_toks = detail::split_ws(line.substr(colon + 1, arrow - colon - 1));
            if (src_toks.size() != 1) throw ParseError(lineno, "expected single source name");
            std::string combo = line.substr(arrow + 2);
            auto [it, inserted] = map_index.emplace(head[1], maps.size());
            if (inserted) maps.push_back({ChainMapFixture{head[1], {}}, lineno});
            ChainMapFixture& mf = maps[it->second].first;
            if (mf.images.count(src_toks[0]))
                throw ParseError(lineno, "duplicate map line for source " + src_toks[0]);
            std::vector<std::pair<Monomial, std::string>> terms;
            std::size_t start = 0;
            bool zero_combo = false;
            while (true) {
                std::size_t plus = combo.find('+', start);
                std::string part = combo.substr(
                    start, plus == std::string::npos ? std::string::npos : plus - start);
                auto ptoks = detail::split_ws(part);
                if (ptoks.empty()) throw ParseError(lineno, "empty term in map combination");
                if (ptoks.size() == 1 && ptoks[0] == "0") {
                    zero_combo = true;
                } else {
                    std::string target = ptoks.back();
                    ptoks.pop_back();
                    Monomial coeff;
                    try {
                        coeff = parse_monomial_tokens(ptoks);
                    } catch (const std::exception& e) {
                        throw ParseError(lineno, e.what());
                    }
                    terms.emplace_back(coeff, target);
                }
                if (plus == std::string::npos) break;
                start = plus + 1;
            }
            if (zero_combo && !terms.empty())
                throw ParseError(lineno, "'0' mixed with nonzero terms");
            mf.images[src_toks[0]] = std::move(terms);
        } else {
            throw ParseError(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!saw_header) throw ParseError(lineno, "missing 'complex <name>' header");
    if (gens.empty()) throw ParseError(lineno, "empty complex");

    Complex cx;
    try {
        cx = Complex(cx_name, std::move(gens));
    } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
    }
    for (const auto& dl : diffs) {
        if (!cx.has_generator(dl.source))
            throw ParseError(dl.line, "unknown source generator " + dl.source);
        if (!cx.has_generator(dl.target))
            throw ParseError(dl.line, "unknown target generator " + dl.target);
        Poly p;
        try {
            p = parse_poly(dl.poly);
        } catch (const std::exception& e) {
            throw ParseError(dl.line, e.what());
        }
        cx.add_diff(dl.target, dl.source, p);
    }
    ComplexFixture out{std::move(cx), {}};
    for (auto& [mf, line] : maps) {
        for (const auto& [src, terms] : mf.images) {
            if (!out.complex.has_generator(src))
                throw ParseError(line, "map " + mf.name + ": unknown source " + src);
            for (const auto& [coeff, tgt] : terms)
                if (!out.complex.has_generator(tgt))
                    throw ParseError(line, "map " + mf.name + ": unknown target " + tgt);
        }
        out.maps.push_back(std::move(mf));
    }
    return out;
}

inline ComplexFixture parse_complex_fixture(const std::string& text) {
    std::istringstream in(text);
    return parse_complex_fixture(in);
}

inline Complex parse_complex(const std::string& text) {
    return parse_complex_fixture(text).complex;
}

// Builds the endomorphism described by a chain-map fixture over its complex.
inline Endomorphism realize_map(const Complex& cx, const ChainMapFixture& mf,
                                Bigrading bidegree = {0, 0}) {
    Endomorphism e{mf.name, bidegree, {}};
    for (const auto& [src, terms] : mf.images) {
        int s = cx.index_of(src);
        for (const auto& [coeff, tgt] : terms) e.add(cx.index_of(tgt), s, Poly(coeff));
    }
    return e;
}

inline std::string serialize_complex(const Complex& cx) {
    std::ostringstream out;
    out << "complex " << cx.name() << "\n";
    for (const auto& g : cx.gens())
        out << "gen " << g.name << " " << g.grading.w << " " << g.grading.z << "\n";
    for (std::size_t src = 0; src < cx.size(); ++src) {
        for (const auto& [key, poly] : cx.diff()) {
            if ((std::size_t)key.second != src) continue;
            out << "d " << cx.gens()[key.second].name << " -> " << cx.gens()[key.first].name
                << " : " << to_string(poly) << "\n";
        }
    }
    return out.str();
}

inline std::string serialize_map(const Complex& cx, const Endomorphism& e) {
    std::ostringstream out;
    for (std::size_t src = 0; src < cx.size(); ++src) {
        std::ostringstream combo;
        bool first = true;
        for (const auto& [key, poly] : e.entries) {
            if ((std::size_t)key.second != src) continue;
            for (Monomial m : poly.terms()) {
                if (!first) combo << " + ";
                first = false;
                if (!(m == Monomial{0, 0})) combo << to_string(m) << " ";
                combo << cx.gens()[key.first].name;
            }
        }
        if (!first)
            out << "map " << e.name << " : " << cx.gens()[src].name << " -> " << combo.str()
                << "\n";
    }
    return out.str();
}

} // namespace hflink
