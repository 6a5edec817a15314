#pragma once

#include <vector>

#include "pres/group.hpp"

namespace pres {

// A total function G -> G as a length-q lookup table.
class FuncTable {
public:
    FuncTable(GroupPtr group, std::vector<code_t> values);

    const GroupTable& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    int size() const { return static_cast<int>(values_.size()); }
    code_t operator()(int x) const { return values_[x]; }
    const std::vector<code_t>& values() const { return values_; }

    bool operator==(const FuncTable& o) const {
        return group_ == o.group_ && values_ == o.values_;
    }

private:
    GroupPtr group_;
    std::vector<code_t> values_;
};

bool is_permutation(const FuncTable& f);

// Sorted distinct values of f.
std::vector<code_t> image(const FuncTable& f);
int image_size(const FuncTable& f);

// counts[b] = #f^{-1}(b)
std::vector<int> preimage_counts(const FuncTable& f);

FuncTable constant_func(GroupPtr g, code_t c);
FuncTable identity_func(GroupPtr g);

// (g + f)(x) = g(x) + f(x); left argument contributes the left summand.
FuncTable add_func(const FuncTable& g, const FuncTable& f);

// (f - h)(x) = f(x) + (-h(x)); the negation falls on the right argument.
FuncTable sub_func(const FuncTable& f, const FuncTable& h);

void require_same_group(const FuncTable& a, const FuncTable& b);

} // namespace pres
