#include <doctest.h>

#include "pres/poly.hpp"

using namespace pres;

TEST_CASE("polynomial parser handles the basic grammar") {
    GroupPtr g7 = make_field(7, 1);
    CHECK(parse_poly("x^2 + 3*x", *g7).terms ==
          std::map<std::uint32_t, code_t>{{2, 1}, {1, 3}});
    CHECK(parse_poly("x", *g7).terms == std::map<std::uint32_t, code_t>{{1, 1}});
    CHECK(parse_poly("5", *g7).terms == std::map<std::uint32_t, code_t>{{0, 5}});
    CHECK(parse_poly("-x^3 + x^3", *g7).terms.empty());

    GroupPtr g5 = make_field(5, 1);
    CHECK(parse_poly("x^2 - x^3", *g5).terms ==
          std::map<std::uint32_t, code_t>{{2, 1}, {3, 4}});
}

TEST_CASE("polynomial parser rejects malformed input") {
    GroupPtr g7 = make_field(7, 1);
    CHECK_THROWS_AS(parse_poly("x^(p-1)/2", *g7), ParseError);
    CHECK_THROWS_AS(parse_poly("", *g7), ParseError);
    CHECK_THROWS_AS(parse_poly("x^2 +", *g7), ParseError);
    CHECK_THROWS_AS(parse_poly("3x", *g7), ParseError);     // '*' is required
    CHECK_THROWS_AS(parse_poly("9*x", *g7), ParseError);    // coefficient out of range
    CHECK_THROWS_AS(parse_poly("g*x", *g7), ParseError);    // no generator over a prime field
    CHECK_NOTHROW(parse_poly("x^3", *g7));
}

TEST_CASE("generator coefficients work over extension fields") {
    GroupPtr g8 = make_field(2, 3);  // modulus x^3+x+1, generator x (code 2)
    REQUIRE(g8->generator() == 2);
    const Polynomial p = parse_poly("g^3*x + g", *g8);
    // g^3 = x^3 = x+1 = code 3
    CHECK(p.terms == std::map<std::uint32_t, code_t>{{1, 3}, {0, 2}});
}

TEST_CASE("evaluation matches hand-computed tables") {
    GroupPtr g7 = make_field(7, 1);
    CHECK(eval_poly(g7, parse_poly("x^2", *g7)).values() ==
          std::vector<code_t>{0, 1, 4, 2, 2, 4, 1});

    GroupPtr g5 = make_field(5, 1);
    CHECK(eval_poly(g5, parse_poly("x^2 - x^3", *g5)).values() ==
          std::vector<code_t>{0, 0, 1, 2, 2});

    CHECK(eval_poly(g7, parse_poly("4", *g7)).values() == std::vector<code_t>(7, 4));
}

TEST_CASE("x^q - x evaluates to zero on every small field") {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 4},
                                                        {5, 1}, {7, 1}, {5, 2}, {3, 3},
                                                        {2, 5}, {2, 6}, {11, 1}, {13, 1}}) {
        GroupPtr g = make_field(p, e);
        REQUIRE(g->order() <= 64);
        Polynomial f;
        f.terms[static_cast<std::uint32_t>(g->order())] = 1;
        f.terms[1] = g->neg(1);
        const FuncTable t = eval_poly(g, f);
        for (int x = 0; x < g->order(); ++x) REQUIRE(t(x) == 0);
    }
}

TEST_CASE("exponent reduction folds x^q into x") {
    GroupPtr g9 = make_field(3, 2);
    Polynomial f;
    f.terms[9] = 1;
    f.terms[1] = g9->neg(1);
    CHECK(reduce_exponents(f, *g9).terms.empty());

    Polynomial h;
    h.terms[10] = 1;  // x^10 = x^2 as a function on gf(9)
    CHECK(reduce_exponents(h, *g9).terms == std::map<std::uint32_t, code_t>{{2, 1}});
}

TEST_CASE("polynomial printing round-trips through the parser") {
    GroupPtr g7 = make_field(7, 1);
    const Polynomial p = parse_poly("x^3 + 2*x + 6", *g7);
    CHECK(parse_poly(poly_to_string(p, *g7), *g7).terms == p.terms);
}
