#pragma once

#include <span>
#include <vector>

#include "pres/func.hpp"

namespace pres {

// Hopcroft-Karp matcher for the shift-set feasibility graph: left vertices
// are domain elements x, right vertices codomain elements y, with an edge
// x -- y iff y = c + f(x) for some shift c. A perfect matching is exactly a
// function g with image inside the shift set and g + f a permutation.
//
// One instance holds reusable scratch buffers; use one per thread.
class ShiftSetMatcher {
public:
    explicit ShiftSetMatcher(const FuncTable& f);

    // True iff a perfect matching exists for the given shifts.
    bool feasible(std::span<const code_t> shifts);

    // x -> matched y; valid after feasible() returned true.
    const std::vector<int>& matching() const { return match_x_; }

private:
    bool bfs_layers();
    bool dfs_augment(int x);

    const GroupTable* g_;
    const std::vector<code_t>* f_;
    int q_;
    std::span<const code_t> shifts_;

    std::vector<int> match_x_;  // left -> right or -1
    std::vector<int> match_y_;  // right -> left or -1
    std::vector<int> dist_;
    std::vector<int> queue_;
};

} // namespace pres
