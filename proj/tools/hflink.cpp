// hflink: exact computations for bigraded link Floer complexes over F2[u,v],
// decorated-surface move calculus, and the cobordism scalar rules.
//
// Exit codes: 0 success / verified match, 1 verify mismatch, 2 validation or
// parse failure, 3 untrusted-window refusal, 4 search-bound exhaustion.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hflink/cells_io.hpp"
#include "hflink/cobordism.hpp"
#include "hflink/fixtures.hpp"
#include "hflink/random_models.hpp"

using json = nlohmann::ordered_json;
using namespace hflink;

namespace {

constexpr const char* kVersion = "hflink 0.1.0";

uint64_t fnv1a(const std::string& s, uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

struct Report {
    json body;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Report(const std::string& command, const std::string& inputs) {
        body["command"] = command;
        body["inputs_hash"] = hash_hex(fnv1a(command + "\n" + inputs));
        body["version"] = kVersion;
    }
    void emit(bool as_json) {
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
        body["timing_ms"] = ms;
        if (as_json) {
            std::cout << body.dump(2) << "\n";
            return;
        }
        std::cout << "# " << body["command"].get<std::string>() << "\n";
        std::cout << "inputs-hash: " << body["inputs_hash"].get<std::string>() << "\n";
        print_value(body, 0, true);
        std::cout << "version: " << kVersion << "\n";
        std::cout << "timing-ms: " << ms << "\n";
    }

private:
    static void print_value(const json& j, int indent, bool top) {
        std::string pad(indent, ' ');
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (top && (it.key() == "command" || it.key() == "inputs_hash" ||
                        it.key() == "version" || it.key() == "timing_ms"))
                continue;
            if (it->is_object()) {
                std::cout << pad << it.key() << ":\n";
                print_value(*it, indent + 2, false);
            } else if (it->is_array()) {
                std::cout << pad << it.key() << ":";
                for (const auto& e : *it) {
                    if (e.is_primitive())
                        std::cout << " " << e.dump();
                    else
                        std::cout << "\n" << pad << "  " << e.dump();
                }
                std::cout << "\n";
            } else {
                std::cout << pad << it.key() << ": "
                          << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
            }
        }
    }
};

json table_json(const HilbertTable& t) {
    json out = json::array();
    for (const auto& [g, d] : t) out.push_back({g.w, g.z, d});
    return out;
}

json decomp_json(const ModuleDecomp& d) {
    json out = json::array();
    for (const auto& s : d.summands) {
        json e;
        e["kind"] = s.free ? "free" : "torsion";
        e["position"] = {s.position.w, s.position.z};
        if (!s.free) e["order"] = s.order;
        out.push_back(e);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Default window: [-40,8]^2, grown to cover every generator grading plus a
// margin of 4, capped at 10^4 cells.
Window auto_window(const Complex& c) {
    Window def{-40, 8, -40, 8};
    Window cover = window_for(c, 4);
    Window u{std::min(def.w_lo, cover.w_lo), std::max(def.w_hi, cover.w_hi),
             std::min(def.z_lo, cover.z_lo), std::max(def.z_hi, cover.z_hi)};
    if (u.cell_count() <= 10000) return u;
    return cover;
}

// A pointed model from a resolved fixture: explicit phi*/psi* maps if the
// fixture provides them, otherwise the knot model.
PointedModel model_from_fixture(const ResolvedFixture& fx) {
    std::vector<Endomorphism> phis, psis;
    for (const auto& mf : fx.maps) {
        if (mf.name.rfind("phi", 0) == 0)
            phis.push_back(realize_map(fx.complex, mf, {1, -1}));
        else if (mf.name.rfind("psi", 0) == 0)
            psis.push_back(realize_map(fx.complex, mf, {-1, 1}));
    }
    if (phis.empty()) return PointedModel::knot(fx.complex);
    PointedModel m;
    m.complex = fx.complex;
    m.complex.set_basepoint_pairs((int)phis.size());
    m.phi_maps = std::move(phis);
    m.psi_maps = std::move(psis);
    m.check();
    return m;
}

struct CliWindow {
    std::vector<long long> box;  // w_lo w_hi z_lo z_hi
    Window resolve(const Complex& c) const {
        if (box.empty()) return auto_window(c);
        return Window{box[0], box[1], box[2], box[3]};
    }
};

int cmd_compute(const std::string& fixture, const std::string& what, const std::string& flavor,
                const CliWindow& cw, bool as_json) {
    ResolvedFixture fx = resolve_fixture(fixture);
    Flavor f = flavor_from_name(flavor);
    Window w = cw.resolve(fx.complex);
    Report rep("compute " + fixture + " " + what + " --flavor " + flavor,
               serialize_complex(fx.complex));
    rep.body["fixture"] = fixture;
    rep.body["flavor"] = flavor;
    rep.body["window"] = {w.w_lo, w.w_hi, w.z_lo, w.z_hi};
    PointedModel m = model_from_fixture(fx);
    if (what == "hfl") {
        rep.body["hfl"] = table_json(homology_table(fx.complex, f, w));
        if (f == Flavor::circ) rep.body["hfl_decomp"] = decomp_json(circ_decompose(fx.complex));
    } else if (what == "hf") {
        rep.body["hf"] = table_json(hf_table(m, f, w));
        if (f == Flavor::circ) rep.body["hf_decomp"] = decomp_json(hf_circ_decomp(m));
    } else if (what == "hf_w") {
        rep.body["hf_w"] = table_json(hf_w_table(m, f, w));
        if (f == Flavor::circ) rep.body["hf_w_decomp"] = decomp_json(hf_w_circ_decomp(m));
    } else {
        throw CLI::ValidationError("what must be one of hfl|hf|hf_w");
    }
    rep.emit(as_json);
    return 0;
}

int cmd_verify(const std::string& fixture, std::string against, bool as_json) {
    ResolvedFixture fx = resolve_fixture(fixture);
    if (against.empty()) {
        if (fixture == "trefoil")
            against = "torus:2,3";
        else if (fixture.rfind("torus:", 0) == 0)
            against = fixture;
        else
            throw std::invalid_argument("no default comparator for '" + fixture +
                                        "'; pass an explicit closed form");
    }
    Report rep("verify " + fixture + " against " + against, serialize_complex(fx.complex));
    rep.body["fixture"] = fixture;
    rep.body["against"] = against;
    bool match = false;
    if (against.rfind("torus:", 0) == 0) {
        auto rest = against.substr(6);
        auto comma = rest.find(',');
        long long p = std::stoll(rest.substr(0, comma)), q = std::stoll(rest.substr(comma + 1));
        PointedModel m = model_from_fixture(fx);
        TorusPipeline actual;
        actual.circ_w = hf_w_circ_decomp(m);
        Window w = auto_window(fx.complex);
        for (const auto& [g, d] : homology_table(fx.complex, Flavor::hat, w))
            actual.hfl_hat_dim += d;
        for (const auto& [g, d] : hf_table(m, Flavor::hat, w)) actual.hf_hat_dim += d;
        TorusClosedForm expected = torus_closed_form(p, q);
        TorusVerify v = torus_verify(actual, expected);
        match = v.ok();
        rep.body["circ_w_match"] = v.circ_w.match;
        rep.body["circ_w_shift"] = {v.circ_w.shift.w, v.circ_w.shift.z};
        if (!v.circ_w.match) rep.body["circ_w_diff"] = v.circ_w.diff;
        rep.body["hfl_hat"] = {{"actual", actual.hfl_hat_dim}, {"expected", expected.hfl_hat_dim}};
        rep.body["hf_hat"] = {{"actual", actual.hf_hat_dim}, {"expected", expected.hf_hat_dim}};
        rep.body["actual_circ_w"] = decomp_json(actual.circ_w);
        rep.body["expected_circ_w"] = decomp_json(expected.circ_w);
    } else if (against.rfind("shape:", 0) == 0) {
        PointedModel m = model_from_fixture(fx);
        ModuleDecomp actual = hf_circ_decomp(m);
        ModuleDecomp expected = fixture_shapes(against.substr(6));
        auto v = compare_decomps(actual, expected);
        match = v.match;
        rep.body["match"] = v.match;
        rep.body["shift"] = {v.shift.w, v.shift.z};
        if (!v.match) rep.body["diff"] = v.diff;
        rep.body["actual"] = decomp_json(actual);
        rep.body["expected"] = decomp_json(expected);
    } else {
        throw std::invalid_argument("comparator must be torus:p,q or shape:<name>");
    }
    rep.body["verdict"] = match ? "match" : "mismatch";
    rep.emit(as_json);
    return match ? 0 : 1;
}

int cmd_moves_connect(const std::string& file_a, const std::string& file_b, std::size_t bound,
                      bool as_json) {
    std::string ta = read_file(file_a), tb = read_file(file_b);
    auto a = cells::parse_cells(ta), b = cells::parse_cells(tb);
    Report rep("moves connect " + file_a + " " + file_b, ta + "\n--\n" + tb);
    cells::MoveSequence seq = cells::connect_decorations(a.decomposition, b.decomposition, bound);
    // replay check before reporting
    if (!cells::iso(cells::apply_moves(a.decomposition, seq), b.decomposition))
        throw std::logic_error("replay check failed");
    rep.body["moves"] = (json::array_t)[&] {
        json::array_t lines;
        std::istringstream ss(cells::serialize_moves(seq));
        std::string line;
        while (std::getline(ss, line)) lines.push_back(line);
        return lines;
    }();
    rep.body["length"] = seq.size();
    rep.body["replay"] = "verified";
    rep.emit(as_json);
    return 0;
}

int cmd_moves_enumerate(long long g, long long np, long long nm, bool as_json) {
    Report rep("moves enumerate g=" + std::to_string(g) + " plus=" + std::to_string(np) +
                   " minus=" + std::to_string(nm),
               "");
    auto classes = cells::enumerate_deperturbed(g, (std::size_t)np, (std::size_t)nm);
    rep.body["classes"] = classes.size();
    json arr = json::array();
    for (const auto& d : classes) arr.push_back(cells::serialize_cells(d));
    rep.body["decompositions"] = arr;
    rep.emit(as_json);
    return 0;
}

int cmd_moves_quads(int m, bool as_json) {
    Report rep("moves quads m=" + std::to_string(m), "");
    auto g = cells::quad_switch_graph(m);
    rep.body["dissections"] = g.nodes.size();
    rep.body["connected"] = g.connected;
    rep.emit(as_json);
    return 0;
}

int cmd_cobordism(const std::string& script, const std::string& flavor, bool as_json) {
    std::string text = read_file(script);
    CobordismWord word = parse_word(text);
    Report rep("cobordism " + script + " --flavor " + flavor, text);
    ScalarResult r = evaluate_word(word);
    rep.body["scalar"] = r.text();
    rep.body["v_power"] = r.v_power;
    if (flavor == "hat")
        rep.body["hat_note"] = r.hat_zero() ? "zero in the hat flavor" : "identity survives";
    else if (r.hat_zero())
        rep.body["hat_note"] = "would vanish in the hat flavor";
    rep.emit(as_json);
    return 0;
}

int cmd_slice(const std::string& fixture, const std::string& map_name, const CliWindow& cw,
              bool as_json) {
    ResolvedFixture fx = resolve_fixture(fixture);
    Endomorphism f = resolve_map(map_name, fx.complex);
    Report rep("slice " + fixture + " " + map_name,
               serialize_complex(fx.complex) + serialize_map(fx.complex, f));
    Endomorphism ident{"identity", {0, 0}, {}};
    for (int i = 0; i < (int)fx.complex.size(); ++i) ident.add(i, i, Poly::one());
    TraceClass t_id = trace_class(fx.complex, ident);
    TraceClass t_f = trace_class(fx.complex, f);
    rep.body["cycle_check"] = "both trace classes are closed";
    Window w = cw.box.empty() ? auto_window(t_id.ambient) : cw.resolve(t_id.ambient);
    json verdicts;
    bool any = false;
    for (Flavor fl : {Flavor::minus, Flavor::circ, Flavor::hat}) {
        bool distinct = distinguish(t_id, t_f, fl, w);
        verdicts[flavor_name(fl)] = distinct ? "distinct" : "equal";
        any = any || distinct;
    }
    rep.body["verdicts"] = verdicts;
    rep.body["summary"] = any ? "the two classes differ in homology" : "classes agree";
    rep.emit(as_json);
    return 0;
}

int cmd_validate(const std::string& target, bool as_json) {
    // builtin fixture, complex file, or cells file
    std::string content;
    bool is_cells = false;
    if (is_builtin_fixture(target)) {
        content = serialize_complex(resolve_fixture(target).complex);
    } else {
        content = read_file(target);
        std::istringstream probe(content);
        std::string line;
        while (std::getline(probe, line)) {
            auto toks = hflink::detail::split_ws(hflink::detail::strip_comment(line));
            if (toks.empty()) continue;
            is_cells = toks[0] == "vertex";
            break;
        }
    }
    Report rep("validate " + target, content);
    if (is_cells) {
        auto d = cells::parse_cells(content);  // validates internally
        auto r = cells::validate_cells(d.decomposition);
        rep.body["kind"] = "cells";
        rep.body["genus"] = r.genus;
        auto p = cells::predicates(d.decomposition);
        rep.body["simple"] = p.simple;
        rep.body["complete"] = p.complete;
        rep.body["deperturbed"] = p.deperturbed;
    } else {
        Complex c = parse_complex(content);
        auto r = c.validate();
        rep.body["kind"] = "complex";
        rep.body["d_squared_zero"] = r.d_squared_zero;
        rep.body["homogeneous"] = r.homogeneous;
        rep.body["reduced"] = r.reduced;
        if (!r.ok()) {
            rep.body["issues"] = r.summary();
            rep.emit(as_json);
            return 2;
        }
    }
    rep.body["verdict"] = "valid";
    rep.emit(as_json);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bigraded link Floer workbench"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();  // accept global flags after the subcommand
    bool as_json = false;
    app.add_flag("--json", as_json, "emit the machine-readable report");

    std::string flavor = "minus";
    CliWindow cw;
    std::size_t bound = 100000;

    auto add_window = [&](CLI::App* cmd) {
        cmd->add_option("--window", cw.box, "w_lo w_hi z_lo z_hi")->expected(4);
    };

    auto* compute = app.add_subcommand("compute", "homology / HF / HF_w tables");
    std::string fixture, what = "hfl", against, file_a, file_b, script, map_name;
    compute->add_option("fixture", fixture)->required();
    compute->add_option("what", what)->check(CLI::IsMember({"hfl", "hf", "hf_w"}));
    compute->add_option("--flavor", flavor)->check(CLI::IsMember({"minus", "circ", "hat"}));
    add_window(compute);

    auto* verify = app.add_subcommand("verify", "compare a fixture against a closed form");
    verify->add_option("fixture", fixture)->required();
    verify->add_option("against", against);

    auto* moves = app.add_subcommand("moves", "decorated-surface move calculus");
    auto* mc = moves->add_subcommand("connect", "connect two decompositions");
    mc->add_option("first", file_a)->required();
    mc->add_option("second", file_b)->required();
    mc->add_option("--bound", bound, "search state bound");
    auto* me = moves->add_subcommand("enumerate", "deperturbed classes at desk scale");
    long long gen_g = 0, gen_p = 1, gen_m = 1;
    me->add_option("genus", gen_g)->required();
    me->add_option("plus", gen_p)->required();
    me->add_option("minus", gen_m)->required();
    int quad_m = 3;
    auto* mq = moves->add_subcommand("quads", "quadrangulation switch graph");
    mq->add_option("m", quad_m)->required();
    moves->require_subcommand(1);

    auto* cob = app.add_subcommand("cobordism", "evaluate a cobordism word script");
    cob->add_option("script", script)->required();
    cob->add_option("--flavor", flavor)->check(CLI::IsMember({"minus", "circ", "hat"}));

    auto* slice = app.add_subcommand("slice", "trace-class comparison for slice disks");
    slice->add_option("fixture", fixture)->required();
    slice->add_option("map", map_name)->required();
    add_window(slice);

    auto* validate = app.add_subcommand("validate", "validate a fixture or file");
    validate->add_option("target", fixture)->required();

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return cmd_compute(fixture, what, flavor, cw, as_json);
        if (verify->parsed()) return cmd_verify(fixture, against, as_json);
        if (moves->parsed()) {
            if (mc->parsed()) return cmd_moves_connect(file_a, file_b, bound, as_json);
            if (me->parsed()) return cmd_moves_enumerate(gen_g, gen_p, gen_m, as_json);
            if (mq->parsed()) return cmd_moves_quads(quad_m, as_json);
        }
        if (cob->parsed()) return cmd_cobordism(script, flavor, as_json);
        if (slice->parsed()) return cmd_slice(fixture, map_name, cw, as_json);
        if (validate->parsed()) return cmd_validate(fixture, as_json);
    } catch (const UntrustedWindowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cells::SearchExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
