#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "pres/io.hpp"
#include "pres/poly.hpp"

using namespace pres;
using nlohmann::json;

TEST_CASE("group specs parse and round-trip") {
    GroupPtr g7 = parse_group_spec("gf:7");
    CHECK(g7->order() == 7);
    CHECK(g7->spec() == "gf:7");

    GroupPtr g8 = parse_group_spec("gf:2^3:1,1,0,1");
    CHECK(g8->order() == 8);
    CHECK(parse_group_spec(g8->spec())->modulus() == g8->modulus());

    GroupPtr g9 = parse_group_spec("gf:3^2");
    CHECK(parse_group_spec(g9->spec())->order() == 9);

    GroupPtr z = parse_group_spec("zn:2x3x2");
    CHECK(z->order() == 12);
    CHECK(z->spec() == "zn:2x3x2");

    CHECK_THROWS_AS(parse_group_spec("gf"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("nope:3"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("gf:abc"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("cayley:/no/such/file.json"), ParseError);
}

TEST_CASE("cayley groups load from JSON files") {
    const std::string path = "cayley_z3.json";
    {
        std::ofstream out(path);
        out << R"({"order":3,"add":[[0,1,2],[1,2,0],[2,0,1]]})";
    }
    GroupPtr g = parse_group_spec("cayley:" + path);
    CHECK(g->order() == 3);
    CHECK(g->is_abelian());
    CHECK(g->add(1, 2) == 0);
    CHECK(g->spec() == "cayley:" + path);
    std::remove(path.c_str());
}

TEST_CASE("function files round-trip") {
    GroupPtr g7 = parse_group_spec("gf:7");
    const FuncTable f(g7, {0, 0, 2, 2, 4, 4, 6});
    const json doc = function_to_json(f);
    const FuncTable back = function_from_json(doc);
    CHECK(back.values() == f.values());
    CHECK(back.group().spec() == f.group().spec());

    const FuncTable from_poly =
        function_from_json(json{{"group", "gf:7"}, {"poly", "x^2"}});
    CHECK(from_poly.values() == std::vector<code_t>{0, 1, 4, 2, 2, 4, 1});

    CHECK_THROWS_AS(function_from_json(json{{"group", "gf:7"}}), ParseError);
    CHECK_THROWS_AS(function_from_json(json{{"group", "gf:7"}, {"table", {0, 9}}}), ParseError);
}

TEST_CASE("stats reports serialize to the fixed CSV layout") {
    GroupPtr g7 = parse_group_spec("gf:7");
    const StatsReport r = function_stats(FuncTable(g7, {0, 0, 2, 2, 4, 4, 6}));
    CHECK(stats_to_csv(r) ==
          "q,V,u,M_0,M_1,M_2,N_2,delta,Nb,NB,A,lb,ub\n"
          "7,4,2,3,1,3,6,5,6,84,42,2,4\n");

    const json j = stats_to_json(r);
    CHECK(j["q"] == 7);
    CHECK(j["v"] == 4);
    CHECK(j["u"] == 2);
    CHECK(j["m"] == json::array({3, 1, 3}));
    CHECK(j["n_s"] == json::array({6}));
    CHECK(j["delta"] == 5);
    CHECK(j["nb"] == 6);
    CHECK(j["nbb"] == 84);
    CHECK(j["ambiguity"] == 42);
    CHECK(j["bounds"]["lower"] == 2);
    CHECK(j["bounds"]["upper"] == 4);
    CHECK(j["lbub_char"] == false);
}

TEST_CASE("huge tuple counts serialize as decimal strings") {
    GroupPtr z = parse_group_spec("zn:32");
    const StatsReport r = function_stats(constant_func(z, 0));
    const json j = stats_to_json(r);
    // N_32 = 32! overflows 64-bit integers and must arrive as a string
    CHECK(j["n_s"].back().is_string());
    CHECK(j["n_s"][0].is_number());  // N_2 = 32*31 stays numeric
    const std::string csv = stats_to_csv(r);
    CHECK(csv.find("263130836933693530167218012160000000") != std::string::npos);
}

TEST_CASE("certificates serialize with their search trace") {
    GroupPtr g7 = parse_group_spec("gf:7");
    const FuncTable sq = function_from_json(json{{"group", "gf:7"}, {"poly", "x^2"}});
    const PresCertificate cert = pres_exact(sq);
    const json j = certificate_to_json(cert);
    CHECK(j["status"] == "solved");
    CHECK(j["method"] == "matching-search");
    CHECK(j["pres"] == 3);
    CHECK(j["verified"] == true);
    CHECK(j["shifts"].size() == 3);
    CHECK(j["g"].size() == 7);
    REQUIRE(j["searched"].size() == 1);
    CHECK(j["searched"][0]["k"] == 2);
    CHECK(j["searched"][0]["sets"] == 6);
    CHECK(j["searched"][0]["exhausted"] == true);
}

TEST_CASE("rational formatting") {
    CHECK(mpq_to_string(mpq_class(3, 2)) == "3/2");
    CHECK(mpq_to_string(mpq_class(4, 2)) == "2");
    CHECK(parse_rational("-7/3") == mpq_class(-7, 3));
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}
