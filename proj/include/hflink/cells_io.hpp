#pragma once

// Fixture format for cell decompositions and replayable move scripts.
//
//   vertex <name> <plus|minus>
//   edge <name> <plus-vertex> <minus-vertex>
//   cell <name> : <signed edge list>      # e.g.  cell f : +a -b +c -a +b -c
//
// Moves are one per line, with indices referring to the evolving state (cells
// and corners renumber deterministically after each move):
//
//   perturb <cell> <corner_a> <corner_b>
//   deperturb <edge>
//   switch <edge> <corner_a> <corner_b>

#include <istream>
#include <ostream>
#include <sstream>

#include "hflink/cells.hpp"
#include "hflink/complex_io.hpp"  // ParseError, token helpers

namespace hflink::cells {

struct NamedDecomposition {
    CellDecomposition decomposition;
    std::vector<std::string> vertex_names, edge_names, cell_names;
};

inline NamedDecomposition parse_cells(std::istream& in) {
    NamedDecomposition out;
    std::map<std::string, int> vidx, eidx;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = hflink::detail::strip_comment(raw);
        auto toks = hflink::detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "vertex") {
            if (toks.size() != 3) throw ParseError(lineno, "expected: vertex <name> <plus|minus>");
            Color c;
            if (toks[2] == "plus")
                c = Color::plus;
            else if (toks[2] == "minus")
                c = Color::minus;
            else
                throw ParseError(lineno, "vertex color must be plus or minus");
            if (!vidx.emplace(toks[1], (int)out.decomposition.vertex_colors.size()).second)
                throw ParseError(lineno, "duplicate vertex " + toks[1]);
            out.decomposition.vertex_colors.push_back(c);
            out.vertex_names.push_back(toks[1]);
        } else if (toks[0] == "edge") {
            if (toks.size() != 4)
                throw ParseError(lineno, "expected: edge <name> <plus-vertex> <minus-vertex>");
            auto pv = vidx.find(toks[2]), mv = vidx.find(toks[3]);
            if (pv == vidx.end() || mv == vidx.end())
                throw ParseError(lineno, "edge " + toks[1] + " references unknown vertices");
            if (!eidx.emplace(toks[1], (int)out.decomposition.edges.size()).second)
                throw ParseError(lineno, "duplicate edge " + toks[1]);
            out.decomposition.edges.push_back({pv->second, mv->second});
            out.edge_names.push_back(toks[1]);
        } else if (toks[0] == "cell") {
            auto colon = line.find(':');
            if (colon == std::string::npos || toks.size() < 2)
                throw ParseError(lineno, "expected: cell <name> : <signed edge list>");
            auto head = hflink::detail::split_ws(line.substr(0, colon));
            if (head.size() != 2) throw ParseError(lineno, "expected: cell <name> : ...");
            std::vector<Side> word;
            for (const auto& t : hflink::detail::split_ws(line.substr(colon + 1))) {
                if (t.size() < 2 || (t[0] != '+' && t[0] != '-'))
                    throw ParseError(lineno, "cell side '" + t + "' must be +edge or -edge");
                auto it = eidx.find(t.substr(1));
                if (it == eidx.end())
                    throw ParseError(lineno, "cell references unknown edge " + t.substr(1));
                word.push_back({it->second, t[0] == '+'});
            }
            out.decomposition.cells.push_back(std::move(word));
            out.cell_names.push_back(head[1]);
        } else {
            throw ParseError(lineno, "unknown keyword '" + toks[0] + "'");
        }
    }
    auto rep = validate_cells(out.decomposition);
    if (!rep.ok()) throw ParseError(lineno, "invalid decomposition:\n" + rep.summary());
    return out;
}

inline NamedDecomposition parse_cells(const std::string& text) {
    std::istringstream in(text);
    return parse_cells(in);
}

inline std::string serialize_cells(const CellDecomposition& d) {
    std::ostringstream out;
    for (int v = 0; v < (int)d.n_vertices(); ++v)
        out << "vertex v" << v << " " << color_name(d.vertex_colors[v]) << "\n";
    for (int e = 0; e < (int)d.n_edges(); ++e)
        out << "edge e" << e << " v" << d.edges[e].first << " v" << d.edges[e].second << "\n";
    for (int c = 0; c < (int)d.n_cells(); ++c) {
        out << "cell c" << c << " :";
        for (const Side& s : d.cells[c]) out << " " << (s.forward ? "+" : "-") << "e" << s.edge;
        out << "\n";
    }
    return out.str();
}

inline std::string serialize_moves(const MoveSequence& seq) {
    std::ostringstream out;
    for (const Move& m : seq) {
        switch (m.kind) {
            case Move::Kind::perturb:
                out << "perturb " << m.cell << " " << m.corner_a << " " << m.corner_b << "\n";
                break;
            case Move::Kind::deperturb:
                out << "deperturb " << m.edge << "\n";
                break;
            case Move::Kind::edge_switch:
                out << "switch " << m.edge << " " << m.corner_a << " " << m.corner_b << "\n";
                break;
        }
    }
    return out.str();
}

inline MoveSequence parse_moves(std::istream& in) {
    MoveSequence seq;
    std::string raw;
    int lineno = 0;
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ParseError(lineno, "bad integer '" + s + "'");
        }
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = hflink::detail::strip_comment(raw);
        auto toks = hflink::detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "perturb" && toks.size() == 4)
            seq.push_back({Move::Kind::perturb, to_int(toks[1]), to_int(toks[2]), to_int(toks[3]),
                           -1});
        else if (toks[0] == "deperturb" && toks.size() == 2)
            seq.push_back({Move::Kind::deperturb, -1, -1, -1, to_int(toks[1])});
        else if (toks[0] == "switch" && toks.size() == 4)
            seq.push_back({Move::Kind::edge_switch, -1, to_int(toks[2]), to_int(toks[3]),
                           to_int(toks[1])});
        else
            throw ParseError(lineno, "bad move line");
    }
    return seq;
}

inline MoveSequence parse_moves(const std::string& text) {
    std::istringstream in(text);
    return parse_moves(in);
}

} // namespace hflink::cells
