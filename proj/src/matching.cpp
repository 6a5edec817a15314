#include "pres/matching.hpp"

#include <algorithm>
#include <limits>

namespace pres {

namespace {
constexpr int kInf = std::numeric_limits<int>::max();
}

ShiftSetMatcher::ShiftSetMatcher(const FuncTable& f)
    : g_(&f.group()),
      f_(&f.values()),
      q_(f.size()),
      match_x_(f.size(), -1),
      match_y_(f.size(), -1),
      dist_(f.size(), 0),
      queue_(f.size(), 0) {}

bool ShiftSetMatcher::bfs_layers() {
    int head = 0, tail = 0;
    for (int x = 0; x < q_; ++x) {
        if (match_x_[x] < 0) {
            dist_[x] = 0;
            queue_[tail++] = x;
        } else {
            dist_[x] = kInf;
        }
    }
    bool reachable_free = false;
    while (head < tail) {
        const int x = queue_[head++];
        const code_t fx = (*f_)[x];
        for (const code_t c : shifts_) {
            const int y = g_->add(c, fx);
            const int nx = match_y_[y];
            if (nx < 0) {
                reachable_free = true;
            } else if (dist_[nx] == kInf) {
                dist_[nx] = dist_[x] + 1;
                queue_[tail++] = nx;
            }
        }
    }
    return reachable_free;
}

bool ShiftSetMatcher::dfs_augment(int x) {
    const code_t fx = (*f_)[x];
    for (const code_t c : shifts_) {
        const int y = g_->add(c, fx);
        const int nx = match_y_[y];
        if (nx < 0 || (dist_[nx] == dist_[x] + 1 && dfs_augment(nx))) {
            match_x_[x] = y;
            match_y_[y] = x;
            return true;
        }
    }
    dist_[x] = kInf;
    return false;
}

bool ShiftSetMatcher::feasible(std::span<const code_t> shifts) {
    shifts_ = shifts;
    std::fill(match_x_.begin(), match_x_.end(), -1);
    std::fill(match_y_.begin(), match_y_.end(), -1);
    int matched = 0;
    while (bfs_layers()) {
        for (int x = 0; x < q_; ++x) {
            if (match_x_[x] < 0 && dfs_augment(x)) ++matched;
        }
        if (matched == q_) return true;
    }
    return matched == q_;
}

} // namespace pres
