#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hflink/poly.hpp"

using namespace hflink;

namespace {

Poly random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 8), expo(0, 6);
    Poly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) p.toggle({(unsigned)expo(rng), (unsigned)expo(rng)});
    return p;
}

} // namespace

TEST_CASE("poly addition is symmetric difference", "[poly]") {
    Poly u = poly_u();
    CHECK((u + u).is_zero());

    Poly one = Poly::one();
    Poly uv(Monomial{1, 1});
    Poly s = one + uv;
    CHECK(s.term_count() == 2);
    CHECK(s.contains({0, 0}));
    CHECK(s.contains({1, 1}));

    Poly a = Poly(Monomial{2, 0}) + Poly(Monomial{0, 1});
    Poly b = Poly(Monomial{0, 1}) + Poly(Monomial{1, 0});
    Poly c = a + b;
    CHECK(c.term_count() == 2);
    CHECK(c.contains({2, 0}));
    CHECK(c.contains({1, 0}));
}

TEST_CASE("poly multiplication", "[poly]") {
    CHECK(poly_u() * poly_v() == Poly(Monomial{1, 1}));
    Poly one_plus_u = Poly::one() + poly_u();
    Poly sq = one_plus_u * one_plus_u;  // Frobenius in characteristic 2
    CHECK(sq == Poly::one() + Poly(Monomial{2, 0}));
    CHECK((Poly::zero() * poly_v(3)).is_zero());
}

TEST_CASE("specialization per flavor", "[poly]") {
    Poly p = poly_u() + poly_v(2);
    CHECK(specialize(p, Flavor::circ) == poly_v(2));
    Poly q = Poly::one() + Poly(Monomial{1, 1});
    CHECK(specialize(q, Flavor::hat) == Poly::one());
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Poly r = random_poly(rng);
        CHECK(specialize(r, Flavor::minus) == r);
    }
}

TEST_CASE("monomial bidegrees", "[poly]") {
    CHECK(monomial_bidegree({1, 0}) == Bigrading{-2, 0});
    CHECK(monomial_bidegree({0, 1}) == Bigrading{0, -2});
    CHECK(monomial_bidegree({2, 3}) == Bigrading{-4, -6});
}

TEST_CASE("ring axioms on random polynomials", "[poly][property]") {
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 200; ++i) {
        Poly p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
        CHECK((p + p).is_zero());
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        for (Flavor f : {Flavor::minus, Flavor::circ, Flavor::hat})
            CHECK(specialize(p * q, f) == specialize(p, f) * specialize(q, f));
    }
}

TEST_CASE("bidegree is additive on products", "[poly][property]") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> expo(0, 9);
    for (int i = 0; i < 100; ++i) {
        Monomial m{(unsigned)expo(rng), (unsigned)expo(rng)};
        Monomial n{(unsigned)expo(rng), (unsigned)expo(rng)};
        CHECK(monomial_bidegree(m * n) == monomial_bidegree(m) + monomial_bidegree(n));
    }
}

TEST_CASE("polynomial literals", "[poly]") {
    CHECK(parse_poly("u^2 + u v^3 + 1") ==
          Poly(Monomial{2, 0}) + Poly(Monomial{1, 3}) + Poly::one());
    CHECK(parse_poly("0").is_zero());
    CHECK(parse_poly(" v ") == poly_v());
    CHECK_THROWS_AS(parse_poly("u +"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("w"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("u u"), std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        Poly p = random_poly(rng);
        CHECK(parse_poly(to_string(p)) == p);
    }
}
