#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pres/poly.hpp"
#include "pres/solver.hpp"

using namespace pres;
using pres::test::monomial;
using pres::test::random_func;

TEST_CASE("combination helpers enumerate in lexicographic order") {
    using detail::binom_capped;
    using detail::next_combination;
    using detail::unrank_combination;

    CHECK(binom_capped(6, 2) == 15);
    CHECK(binom_capped(30, 15) == 155117520);
    CHECK(binom_capped(5, 0) == 1);
    CHECK(binom_capped(4, 7) == 0);

    std::vector<int> combo{0, 1};
    std::vector<int> unranked;
    for (std::uint64_t rank = 0;; ++rank) {
        unrank_combination(6, 2, rank, unranked);
        REQUIRE(unranked == combo);
        if (!next_combination(combo, 6)) {
            CHECK(rank == 14);
            break;
        }
    }
}

TEST_CASE("feasibility on hand-checked shift sets") {
    GroupPtr g7 = make_field(7, 1);

    // identity with the zero shift: the only witness is g = 0
    const FuncTable id = identity_func(g7);
    auto g = feasible_shift_set(id, {{0}});
    REQUIRE(g.has_value());
    CHECK(g->values() == std::vector<code_t>(7, 0));

    // the two-shift witness that turns [0,0,2,2,4,4,6] into the identity
    const FuncTable f(g7, {0, 0, 2, 2, 4, 4, 6});
    CHECK(feasible_shift_set(f, {{0, 1}}).has_value());
    const FuncTable paper_g(g7, {0, 1, 0, 1, 0, 1, 0});
    CHECK(add_func(paper_g, f) == identity_func(g7));

    // the square map rejects every two-element shift set
    const FuncTable sq = monomial(g7, 2);
    for (code_t c = 1; c < 7; ++c) {
        CHECK_FALSE(feasible_shift_set(sq, {{0, c}}).has_value());
    }

    CHECK_THROWS_AS(feasible_shift_set(sq, {{1, 2}}), InvalidArgument);   // 0 missing
    CHECK_THROWS_AS(feasible_shift_set(sq, {{0, 3, 3}}), InvalidArgument);
    CHECK_THROWS_AS(feasible_shift_set(sq, {{}}), InvalidArgument);
}

TEST_CASE("feasibility is monotone under shift-set growth") {
    std::mt19937_64 rng(47);
    GroupPtr g7 = make_field(7, 1);
    std::uniform_int_distribution<int> pick(1, 6);
    int feasible_seen = 0;
    for (int t = 0; t < 200; ++t) {
        const FuncTable f = random_func(g7, rng);
        std::vector<bool> in_set(7, false);
        in_set[0] = true;
        const int extra = 1 + pick(rng) % 3;
        for (int i = 0; i < extra; ++i) in_set[pick(rng)] = true;
        ShiftSet c;
        for (int v = 0; v < 7; ++v) {
            if (in_set[v]) c.shifts.push_back(static_cast<code_t>(v));
        }
        if (!feasible_shift_set(f, c).has_value()) continue;
        ++feasible_seen;
        int add = pick(rng);
        while (in_set[add]) add = (add % 6) + 1;
        ShiftSet bigger;
        in_set[add] = true;
        for (int v = 0; v < 7; ++v) {
            if (in_set[v]) bigger.shifts.push_back(static_cast<code_t>(v));
        }
        REQUIRE(feasible_shift_set(f, bigger).has_value());
    }
    CHECK(feasible_seen > 20);
}

TEST_CASE("exact solver on named functions") {
    GroupPtr g5 = make_field(5, 1);
    GroupPtr g7 = make_field(7, 1);

    const PresCertificate c1 = pres_exact(eval_poly(g5, parse_poly("x^2 - x^3", *g5)));
    CHECK(c1.pres == 3);
    CHECK(c1.status == SolveStatus::Solved);
    CHECK(c1.verified);
    CHECK(c1.lower_bound == 3);
    CHECK(c1.upper_bound == 3);

    const PresCertificate c2 = pres_exact(monomial(g7, 3));
    CHECK(c2.pres == 3);
    CHECK(c2.searched.empty());  // starts at k = u = 3 and solves there

    const PresCertificate c3 = pres_exact(identity_func(g7));
    CHECK(c3.pres == 1);
    CHECK(c3.witness_g->values() == std::vector<code_t>(7, 0));

    const PresCertificate c4 = pres_exact(FuncTable(g7, {0, 0, 0, 3, 4, 5, 6}));
    CHECK(c4.pres == 3);

    const PresCertificate c5 = pres_exact(FuncTable(g7, {0, 0, 2, 2, 4, 4, 6}));
    CHECK(c5.pres == 2);

    GroupPtr z6 = make_cyclic_product({6});
    const PresCertificate c6 = pres_exact(constant_func(z6, 2));
    CHECK(c6.pres == 6);

    const PresCertificate c7 = pres_exact(monomial(g7, 2));
    CHECK(c7.pres == 3);
    REQUIRE(c7.searched.size() == 1);
    CHECK(c7.searched[0].k == 2);
    CHECK(c7.searched[0].sets_tested == 6);
    CHECK(c7.searched[0].exhausted);
}

TEST_CASE("solver certificates are internally consistent") {
    std::mt19937_64 rng(53);
    for (GroupPtr g : {make_cyclic_product({5}), make_field(7, 1), make_field(2, 3)}) {
        for (int t = 0; t < 30; ++t) {
            const FuncTable f = random_func(g, rng);
            const PresCertificate cert = pres_exact(f);
            REQUIRE(cert.status == SolveStatus::Solved);
            REQUIRE(cert.verified);
            REQUIRE(is_permutation(add_func(*cert.witness_g, f)));
            REQUIRE(image(*cert.witness_g) == cert.witness_shifts.shifts);
            const PresBounds b = pres_bounds(f);
            REQUIRE(b.lower <= cert.pres);
            REQUIRE(cert.pres <= b.upper);
            REQUIRE((cert.pres == 1) == is_permutation(f));
            REQUIRE((cert.pres == f.size()) == (image_size(f) == 1));
            if (b.lb_eq_ub) REQUIRE(cert.pres == b.lower);
        }
    }
}

TEST_CASE("solver agrees with the factorial brute force") {
    GroupPtr g7 = make_field(7, 1);
    CHECK(pres_oracle_bruteforce(FuncTable(g7, {0, 0, 2, 2, 4, 4, 6})) == 2);
    CHECK(pres_oracle_bruteforce(monomial(g7, 2)) == 3);

    GroupPtr z5 = make_cyclic_product({5});
    std::mt19937_64 perm_rng(59);
    CHECK(pres_oracle_bruteforce(pres::test::random_permutation(z5, perm_rng)) == 1);

    CHECK_THROWS_AS(pres_oracle_bruteforce(constant_func(make_cyclic_product({9}), 0)),
                    InvalidArgument);

    std::mt19937_64 rng(61);
    for (GroupPtr g : {make_cyclic_product({5}), make_cyclic_product({6}), make_field(7, 1)}) {
        for (int t = 0; t < 25; ++t) {
            const FuncTable f = random_func(g, rng);
            REQUIRE(pres_exact(f).pres == pres_oracle_bruteforce(f));
        }
    }
}

TEST_CASE("parallel and serial solves return identical certificates") {
    std::mt19937_64 rng(67);
    for (GroupPtr g : {make_field(7, 1), make_field(3, 2), make_cyclic_product({11})}) {
        for (int t = 0; t < 10; ++t) {
            const FuncTable f = random_func(g, rng);
            SolveOptions serial{.jobs = 1, .enumerate_all_optimal = true};
            SolveOptions parallel{.jobs = 4, .enumerate_all_optimal = true};
            const PresCertificate a = pres_exact(f, serial);
            const PresCertificate b = pres_exact(f, parallel);
            REQUIRE(a.pres == b.pres);
            REQUIRE(a.witness_shifts.shifts == b.witness_shifts.shifts);
            REQUIRE(a.witness_g->values() == b.witness_g->values());
            REQUIRE(a.optimal_count == b.optimal_count);
            REQUIRE(a.optimal_sets.size() == b.optimal_sets.size());
            for (std::size_t i = 0; i < a.optimal_sets.size(); ++i) {
                REQUIRE(a.optimal_sets[i].shifts == b.optimal_sets[i].shifts);
            }
            REQUIRE(a.searched.size() == b.searched.size());
            for (std::size_t i = 0; i < a.searched.size(); ++i) {
                REQUIRE(a.searched[i].sets_tested == b.searched[i].sets_tested);
            }
            REQUIRE(a.sets_tested_total == b.sets_tested_total);
        }
    }
}

TEST_CASE("budget limits surface as bound-limited certificates") {
    GroupPtr g7 = make_field(7, 1);
    const FuncTable sq = monomial(g7, 2);

    SolveOptions capped;
    capped.max_sets = 3;
    const PresCertificate c1 = pres_exact(sq, capped);
    CHECK(c1.status == SolveStatus::BoundLimited);
    CHECK(c1.lower_bound == 2);  // nothing below k=2 exists; level 2 was cut short
    CHECK(c1.upper_bound == 4);
    CHECK_FALSE(c1.limit_reason.empty());

    SolveOptions low_k;
    low_k.max_k = 2;
    const PresCertificate c2 = pres_exact(sq, low_k);
    CHECK(c2.status == SolveStatus::BoundLimited);
    CHECK(c2.lower_bound == 3);  // k = 2 exhausted
    REQUIRE(c2.searched.size() == 1);
    CHECK(c2.searched[0].exhausted);

    SolveOptions tiny;
    tiny.order_limit = 5;
    CHECK_THROWS_AS(pres_exact(sq, tiny), InvalidArgument);
}

TEST_CASE("all-optimal enumeration counts every witness set") {
    GroupPtr g7 = make_field(7, 1);
    const FuncTable sq = monomial(g7, 2);
    SolveOptions opts{.enumerate_all_optimal = true, .optimal_set_cap = 100};
    const PresCertificate cert = pres_exact(sq, opts);
    REQUIRE(cert.pres == 3);

    // independent recount by scanning all three-element shift sets
    std::uint64_t count = 0;
    std::vector<ShiftSet> sets;
    for (code_t a = 1; a < 7; ++a) {
        for (code_t b = static_cast<code_t>(a + 1); b < 7; ++b) {
            const ShiftSet s{{0, a, b}};
            if (feasible_shift_set(sq, s).has_value()) {
                ++count;
                sets.push_back(s);
            }
        }
    }
    CHECK(cert.optimal_count == count);
    REQUIRE(cert.optimal_sets.size() == count);
    for (std::size_t i = 0; i < count; ++i) {
        CHECK(cert.optimal_sets[i].shifts == sets[i].shifts);
    }
}

TEST_CASE("upper-bound construction always yields a permutation") {
    GroupPtr g5 = make_field(5, 1);
    GroupPtr g7 = make_field(7, 1);

    const FuncTable c = constant_func(g5, 0);
    const FuncTable gc = construct_upper_bound_g(c);
    CHECK(image_size(gc) == 5);
    CHECK(is_permutation(add_func(gc, c)));

    const FuncTable id = identity_func(g7);
    CHECK(image_size(construct_upper_bound_g(id)) == 1);

    const FuncTable f = eval_poly(g5, parse_poly("x^2 - x^3", *g5));
    const FuncTable gf = construct_upper_bound_g(f);
    CHECK(image_size(gf) <= 3);
    CHECK(is_permutation(add_func(gf, f)));

    std::mt19937_64 rng(71);
    for (GroupPtr g : {make_field(7, 1), make_cyclic_product({2, 5}), make_field(2, 4)}) {
        for (int t = 0; t < 30; ++t) {
            const FuncTable rf = random_func(g, rng);
            const FuncTable w = construct_upper_bound_g(rf);
            REQUIRE(is_permutation(add_func(w, rf)));
            REQUIRE(image_size(w) <= rf.size() - image_size(rf) + 1);
        }
    }
}

TEST_CASE("nonabelian solving works behind the convention flag") {
    GroupPtr s3 = pres::test::make_s3();
    std::mt19937_64 rng(73);
    const FuncTable f = random_func(s3, rng);
    CHECK_THROWS_AS(pres_exact(f), InvalidArgument);

    SolveOptions opts{.allow_nonabelian = true};
    const PresCertificate cert = pres_exact(f, opts);
    CHECK(cert.verified);
    CHECK(is_permutation(add_func(*cert.witness_g, f)));
    const PresBounds b = pres_bounds(f);
    CHECK(b.lower <= cert.pres);
    CHECK(cert.pres <= b.upper);
}
