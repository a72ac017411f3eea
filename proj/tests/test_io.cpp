#include <catch2/catch_amalgamated.hpp>

#include "hflink/complex_io.hpp"
#include "hflink/fixtures.hpp"

using namespace hflink;

TEST_CASE("complex fixture round trip", "[io]") {
    for (const std::string name :
         {"unknot", "trefoil", "figure_eight", "fig8_dual", "torus:3,4"}) {
        Complex c = resolve_fixture(name).complex;
        std::string text = serialize_complex(c);
        Complex back = parse_complex(text);
        CHECK(back.name() == c.name());
        CHECK(structurally_equal(back, c));
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(back.gens()[i].name == c.gens()[i].name);
        CHECK(serialize_complex(back) == text);  // bit-exact round trip
    }
}

TEST_CASE("figure-eight fixture text", "[io]") {
    std::string text =
        "complex figure_eight\n"
        "# Example model complex\n"
        "gen x 0 0\n"
        "gen x0 0 0\n"
        "gen x1 1 -1\n"
        "gen y0 -1 1\n"
        "gen y1 0 0\n"
        "d x1 -> x0 : v\n"
        "d y0 -> x0 : u\n"
        "d y1 -> y0 : v\n"
        "d y1 -> x1 : u\n";
    Complex c = parse_complex(text);
    CHECK(structurally_equal(c, figure_eight_complex()));
}

TEST_CASE("parse errors carry line numbers", "[io]") {
    CHECK_THROWS_AS(parse_complex("complex c\n"), ParseError);  // empty complex
    try {
        parse_complex("complex c\ngen a 0 0\ngen a 1 1\n");
        FAIL("expected duplicate generator error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("duplicate generator name: a") != std::string::npos);
    }
    try {
        parse_complex("complex c\ngen a 0 0\nd a -> b : u\n");
        FAIL("expected unknown generator error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_complex("gen a 0 0\n"), ParseError);            // missing header
    CHECK_THROWS_AS(parse_complex("complex c\ngen a 0 zero\n"), ParseError);
    CHECK_THROWS_AS(parse_complex("complex c\ngen a 0 0\nbogus\n"), ParseError);
}

TEST_CASE("chain map fixtures", "[io]") {
    std::string text = serialize_complex(figure_eight_complex());
    text +=
        "map rollspin : x -> x\n"
        "map rollspin : x0 -> x0\n"
        "map rollspin : x1 -> x1\n"
        "map rollspin : y0 -> y0\n"
        "map rollspin : y1 -> y1 + x0\n";
    auto fx = parse_complex_fixture(text);
    REQUIRE(fx.maps.size() == 1);
    Endomorphism e = realize_map(fx.complex, fx.maps[0]);
    CHECK(e.entries == fig8_rollspin_map(fx.complex).entries);
    CHECK(is_chain_map(fx.complex, e.entries));

    // serialization of maps parses back
    std::string round = serialize_complex(fx.complex) + serialize_map(fx.complex, e);
    auto fx2 = parse_complex_fixture(round);
    REQUIRE(fx2.maps.size() == 1);
    CHECK(realize_map(fx2.complex, fx2.maps[0]).entries == e.entries);

    // monomial coefficients in combinations
    std::string withcoeff = serialize_complex(staircase(2, 3)) + "map f : z1 -> u^2 v x0 + x1\n";
    auto fx3 = parse_complex_fixture(withcoeff);
    Endomorphism f = realize_map(fx3.complex, fx3.maps[0]);
    CHECK(f.entry(fx3.complex.index_of("x0"), fx3.complex.index_of("z1")) ==
          Poly(Monomial{2, 1}));
}

TEST_CASE("registry", "[io]") {
    CHECK(resolve_fixture("trefoil").complex.size() == 3);
    CHECK(resolve_fixture("torus:4,5").complex.validate().ok());
    CHECK(resolve_fixture("staircase:1,0,-1").complex.size() == 3);
    CHECK_THROWS_AS(resolve_fixture("no_such_thing"), std::invalid_argument);
    CHECK_THROWS_AS(resolve_fixture("torus:4,6"), std::invalid_argument);

    Complex f8 = resolve_fixture("figure_eight").complex;
    Endomorphism roll = resolve_map("fig8_rollspin_map", f8);
    CHECK(is_chain_map(f8, roll.entries));
}
