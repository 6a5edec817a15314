#include "pres/func.hpp"

#include <algorithm>
#include <numeric>

namespace pres {

FuncTable::FuncTable(GroupPtr group, std::vector<code_t> values)
    : group_(std::move(group)), values_(std::move(values)) {
    if (!group_) throw InvalidArgument("function needs a group");
    const int q = group_->order();
    if (static_cast<int>(values_.size()) != q) {
        throw InvalidArgument("function table length must equal the group order");
    }
    for (code_t v : values_) {
        if (v >= q) throw InvalidArgument("function value out of range");
    }
}

bool is_permutation(const FuncTable& f) {
    std::vector<bool> seen(f.size(), false);
    for (code_t v : f.values()) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::vector<code_t> image(const FuncTable& f) {
    std::vector<code_t> im(f.values());
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
}

int image_size(const FuncTable& f) { return static_cast<int>(image(f).size()); }

std::vector<int> preimage_counts(const FuncTable& f) {
    std::vector<int> counts(f.size(), 0);
    for (code_t v : f.values()) ++counts[v];
    return counts;
}

FuncTable constant_func(GroupPtr g, code_t c) {
    const int q = g->order();
    return FuncTable(std::move(g), std::vector<code_t>(q, c));
}

FuncTable identity_func(GroupPtr g) {
    std::vector<code_t> v(g->order());
    std::iota(v.begin(), v.end(), code_t{0});
    return FuncTable(std::move(g), std::move(v));
}

FuncTable add_func(const FuncTable& g, const FuncTable& f) {
    require_same_group(g, f);
    const GroupTable& grp = f.group();
    std::vector<code_t> v(f.size());
    for (int x = 0; x < f.size(); ++x) v[x] = grp.add(g(x), f(x));
    return FuncTable(f.group_ptr(), std::move(v));
}

FuncTable sub_func(const FuncTable& f, const FuncTable& h) {
    require_same_group(f, h);
    const GroupTable& grp = f.group();
    std::vector<code_t> v(f.size());
    for (int x = 0; x < f.size(); ++x) v[x] = grp.sub(f(x), h(x));
    return FuncTable(f.group_ptr(), std::move(v));
}

void require_same_group(const FuncTable& a, const FuncTable& b) {
    if (a.group_ptr() != b.group_ptr()) {
        throw InvalidArgument("functions must share one group instance");
    }
}

} // namespace pres
