#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hflink/cobordism.hpp"

using namespace hflink;

namespace {

using Kind = CobordismToken::Kind;

CobordismWord random_word(std::mt19937_64& rng, int& next_id) {
    std::uniform_int_distribution<int> len(0, 6), pick(0, 7), twist_pairs(0, 3);
    CobordismWord w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        switch (pick(rng)) {
            case 0: w.push_back({Kind::merge, 0, ""}); break;
            case 1: w.push_back({Kind::split, 0, ""}); break;
            case 2: w.push_back({Kind::point_shift, 0, ""}); break;
            case 3: w.push_back({Kind::twist, twist_pairs(rng), ""}); break;
            case 4: w.push_back({Kind::perturbation, 0, ""}); break;
            case 5: w.push_back({Kind::deperturbation, 0, ""}); break;
            case 6: {
                std::string id = "e" + std::to_string(next_id++);
                w.push_back({Kind::elementary, 0, id});
                w.push_back({Kind::reverse_elementary, 0, id});
                break;
            }
            case 7: w.push_back({Kind::ribbon_pair, 0, "r" + std::to_string(next_id++)}); break;
        }
    }
    return w;
}

} // namespace

TEST_CASE("scalar rules", "[cobordism]") {
    CHECK(evaluate_word({{Kind::split, 0, ""}, {Kind::merge, 0, ""}}).v_power == 1);
    CHECK(evaluate_word({{Kind::elementary, 0, "1"}, {Kind::reverse_elementary, 0, "1"}})
              .v_power == 1);
    CHECK(evaluate_word({{Kind::twist, 3, ""}, {Kind::perturbation, 0, ""},
                         {Kind::deperturbation, 0, ""}})
              .v_power == 0);
    CHECK(evaluate_word({}).v_power == 0);
    CHECK(evaluate_word({{Kind::point_shift, 0, ""}}).v_power == 1);
    CHECK(evaluate_word({{Kind::ribbon_pair, 0, "r"}}).v_power == 0);

    CHECK_THROWS_AS(evaluate_word({{Kind::elementary, 0, "a"}}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_word({{Kind::elementary, 0, "a"},
                                   {Kind::reverse_elementary, 0, "b"}}),
                    std::invalid_argument);
}

TEST_CASE("hat flavor vanishing", "[cobordism]") {
    CHECK(evaluate_word({{Kind::split, 0, ""}}).hat_zero());
    CHECK(evaluate_word({{Kind::point_shift, 0, ""}}).hat_zero());
    CHECK_FALSE(evaluate_word({{Kind::merge, 0, ""}, {Kind::twist, 2, ""}}).hat_zero());
}

TEST_CASE("concatenation multiplicativity", "[cobordism][property]") {
    std::mt19937_64 rng(77);
    int next_id = 0;
    for (int i = 0; i < 50; ++i) {
        CobordismWord w1 = random_word(rng, next_id), w2 = random_word(rng, next_id);
        CobordismWord cat = w1;
        cat.insert(cat.end(), w2.begin(), w2.end());
        CHECK(evaluate_word(cat).v_power ==
              evaluate_word(w1).v_power + evaluate_word(w2).v_power);
    }
}

TEST_CASE("compression relation", "[cobordism]") {
    CobordismWord base{{Kind::split, 0, ""}, {Kind::merge, 0, ""}};
    CobordismWord with_marker = base;
    with_marker.push_back({Kind::compression, 0, ""});
    CHECK(compression_compare(with_marker, base));

    // zero markers: rejected as malformed input
    CHECK_THROWS_AS(compression_compare(base, base), std::invalid_argument);
    // two markers vs one: applying the relation twice
    CobordismWord two = with_marker;
    two.push_back({Kind::compression, 0, ""});
    CHECK(compression_compare(two, with_marker));
    CHECK(evaluate_word(two).v_power == evaluate_word(base).v_power + 2);
    // words differing elsewhere are rejected
    CobordismWord other{{Kind::merge, 0, ""}, {Kind::compression, 0, ""}};
    CHECK_THROWS_AS(compression_compare(other, base), std::invalid_argument);

    std::mt19937_64 rng(11);
    int next_id = 0;
    for (int i = 0; i < 50; ++i) {
        CobordismWord w = random_word(rng, next_id);
        CobordismWord marked = w;
        marked.push_back({Kind::compression, 0, ""});
        CHECK(compression_compare(marked, w));
    }
}

TEST_CASE("twist endomorphism", "[cobordism]") {
    PointedModel u0 = PointedModel::knot(unknot_complex());
    // empty selection: identity
    Endomorphism t0 = twist_endomorphism(u0, {});
    EntryMap identity;
    identity[{0, 0}] = Poly::one();
    CHECK(t0.entries == identity);

    // one stabilization: Id + Psi Phi collapses the shifted copy
    PointedModel u1 = u0.quasi_stabilized();
    Endomorphism t1 = twist_endomorphism(u1);
    CHECK(t1.entry(0, 0) == Poly::one());
    CHECK(t1.entry(1, 1).is_zero());
    Window w{-8, 6, -8, 6};
    CHECK(twist_is_identity_on_hf(u1, Flavor::minus, w));

    CHECK_THROWS_AS(twist_endomorphism(u0, {5}), std::invalid_argument);
}

TEST_CASE("twist is the identity on HF", "[cobordism][property]") {
    for (Complex base : {unknot_complex(), figure_eight_complex()}) {
        Window w = window_for(base, 5);
        PointedModel m = PointedModel::knot(std::move(base));
        for (int stabs = 0; stabs <= 2; ++stabs) {
            for (Flavor f : {Flavor::minus, Flavor::circ, Flavor::hat})
                CHECK(twist_is_identity_on_hf(m, f, w));
            m = m.quasi_stabilized();
        }
    }
}

TEST_CASE("degree formula", "[cobordism]") {
    CHECK(cobordism_bidegree({0, 0, 0, 0, 0}) == Bigrading{0, 0});
    CHECK(cobordism_bidegree({0, 0, 0, 0, -1}) == Bigrading{0, 1});
    CHECK(cobordism_bidegree({4, 0, 0, 4, 0}) == Bigrading{1, 1});
    CHECK_THROWS_AS(cobordism_bidegree({1, 0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(cobordism_bidegree({0, 0, 0, 2, 0}), std::invalid_argument);
}

TEST_CASE("fixture shapes", "[cobordism]") {
    auto hopf = fixture_shapes("hopf");
    CHECK(hopf.summands == std::vector<Summand>{{false, {-2, 0}, 1}, {true, {0, -2}, 0}});
    CHECK(fixture_shapes("trefoil") == hopf);
    auto neg = fixture_shapes("neg_trefoil");
    CHECK(neg.summands == std::vector<Summand>{{false, {1, -1}, 1}, {true, {0, -2}, 0}});
    CHECK_THROWS_AS(fixture_shapes("granny"), std::invalid_argument);

    // staircase(2,3) HF (circ) has the trefoil shape on the nose
    PointedModel m = PointedModel::knot(staircase(2, 3));
    auto verdict = compare_decomps(hf_circ_decomp(m), fixture_shapes("trefoil"));
    CHECK(verdict.match);
    CHECK(verdict.shift == Bigrading{0, 0});
}

TEST_CASE("word scripts", "[cobordism]") {
    std::string script = "split\nmerge\ntwist 2\nelementary e1\nreverse e1\ncompression\n";
    CobordismWord w = parse_word(script);
    REQUIRE(w.size() == 6);
    CHECK(w[2].pairs == 2);
    CHECK(evaluate_word(w).v_power == 3);
    CHECK(serialize_word(w) == script);
    CHECK(parse_word(serialize_word(w)) == w);

    CHECK_THROWS_AS(parse_word("twist\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("frobnicate\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("merge extra\n"), std::invalid_argument);
}
