#pragma once

#include <random>
#include <vector>

#include "pres/func.hpp"
#include "pres/group.hpp"

namespace pres::test {

inline GroupPtr make_s3() {
    // Symmetric group on 3 points: 0=id, 1=(01), 2=(02), 3=(12), 4=(012), 5=(021).
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                             {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto compose = [&](int a, int b) {
        int data[3];
        for (int i = 0; i < 3; ++i) data[i] = perms[a][perms[b][i]];
        for (int k = 0; k < 6; ++k) {
            if (data[0] == perms[k][0] && data[1] == perms[k][1] && data[2] == perms[k][2]) {
                return k;
            }
        }
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) table[a][b] = compose(a, b);
    return make_cayley(table, "s3");
}

inline FuncTable random_func(GroupPtr g, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, g->order() - 1);
    std::vector<code_t> v(g->order());
    for (code_t& x : v) x = static_cast<code_t>(pick(rng));
    return FuncTable(std::move(g), std::move(v));
}

inline FuncTable random_permutation(GroupPtr g, std::mt19937_64& rng) {
    std::vector<code_t> v(g->order());
    for (int i = 0; i < g->order(); ++i) v[i] = static_cast<code_t>(i);
    std::shuffle(v.begin(), v.end(), rng);
    return FuncTable(std::move(g), std::move(v));
}

inline FuncTable monomial(GroupPtr g, std::uint32_t d) {
    std::vector<code_t> v(g->order());
    for (int x = 0; x < g->order(); ++x) v[x] = g->pow(x, d);
    return FuncTable(std::move(g), std::move(v));
}

} // namespace pres::test
