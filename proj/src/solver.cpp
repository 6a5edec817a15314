#include "pres/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <numeric>

#include <omp.h>

#include "pres/matching.hpp"

namespace pres {

namespace detail {

std::uint64_t binom_capped(int n, int k) {
    constexpr std::uint64_t cap = std::uint64_t(1) << 62;
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i) / i;
        if (t >= cap) return cap;
        r = static_cast<std::uint64_t>(t);
    }
    return r;
}

void unrank_combination(int n, int k, std::uint64_t rank, std::vector<int>& out) {
    out.resize(k);
    int x = 0;
    for (int j = 0; j < k; ++j) {
        while (true) {
            const std::uint64_t below = binom_capped(n - 1 - x, k - 1 - j);
            if (below > rank) break;
            rank -= below;
            ++x;
        }
        out[j] = x++;
    }
}

bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int team_size(int jobs) { return jobs == 0 ? omp_get_max_threads() : jobs; }

// Right-coverage necessary condition: the union over shifts c of c + im(f)
// must be the whole group, else some codomain element has no edge at all.
struct CoverageMasks {
    int q = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;  // q rows

    explicit CoverageMasks(const FuncTable& f) {
        q = f.size();
        words = (q + 63) / 64;
        bits.assign(static_cast<std::size_t>(q) * words, 0);
        const std::vector<code_t> im = image(f);
        const GroupTable& g = f.group();
        for (int c = 0; c < q; ++c) {
            std::uint64_t* row = &bits[static_cast<std::size_t>(c) * words];
            for (code_t y : im) {
                const int b = g.add(c, y);
                row[b >> 6] |= std::uint64_t(1) << (b & 63);
            }
        }
    }

    bool covers(std::span<const code_t> shifts, std::vector<std::uint64_t>& scratch) const {
        scratch.assign(words, 0);
        for (code_t c : shifts) {
            const std::uint64_t* row = &bits[static_cast<std::size_t>(c) * words];
            for (int w = 0; w < words; ++w) scratch[w] |= row[w];
        }
        for (int w = 0; w + 1 < words; ++w) {
            if (scratch[w] != ~std::uint64_t(0)) return false;
        }
        const int rem = q - (words - 1) * 64;
        const std::uint64_t last =
            rem == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << rem) - 1);
        return scratch[words - 1] == last;
    }
};

void fill_shifts(const std::vector<int>& combo, std::vector<code_t>& shifts) {
    shifts.resize(combo.size() + 1);
    shifts[0] = 0;
    for (std::size_t i = 0; i < combo.size(); ++i) {
        shifts[i + 1] = static_cast<code_t>(combo[i] + 1);
    }
}

} // namespace

LevelScan scan_level_serial(const FuncTable& f, int k, std::uint64_t limit, bool collect,
                            std::uint64_t cap, double deadline_seconds) {
    LevelScan out;
    const int n = f.size() - 1;
    const int m = k - 1;
    const CoverageMasks masks(f);
    ShiftSetMatcher matcher(f);
    std::vector<std::uint64_t> scratch;
    std::vector<code_t> shifts;
    std::vector<int> combo(m);
    std::iota(combo.begin(), combo.end(), 0);

    for (std::uint64_t rank = 0; rank < limit; ++rank) {
        if (deadline_seconds > 0 && (rank & 1023) == 0 && now_seconds() > deadline_seconds) {
            return out;  // incomplete
        }
        fill_shifts(combo, shifts);
        ++out.tested;
        if (masks.covers(shifts, scratch) && matcher.feasible(shifts)) {
            if (!collect) {
                out.best_rank = rank;
                out.complete = true;
                return out;
            }
            if (!out.best_rank) out.best_rank = rank;
            ++out.feasible_count;
            if (out.feasible_ranks.size() < cap) out.feasible_ranks.push_back(rank);
        }
        next_combination(combo, n);
    }
    out.complete = true;
    return out;
}

LevelScan scan_level_parallel(const FuncTable& f, int k, std::uint64_t limit, bool collect,
                              std::uint64_t cap, int jobs, double deadline_seconds) {
    LevelScan out;
    const int n = f.size() - 1;
    const int m = k - 1;
    const CoverageMasks masks(f);

    constexpr std::uint64_t block = 1024;
    const std::uint64_t nblocks = (limit + block - 1) / block;
    std::atomic<std::uint64_t> best{~std::uint64_t(0)};
    std::atomic<bool> expired{false};
    std::atomic<bool> skipped{false};  // a block was dropped after the deadline
    std::uint64_t tested = 0, fcount = 0;
    std::vector<std::uint64_t> collected;

#pragma omp parallel num_threads(team_size(jobs))
    {
        ShiftSetMatcher matcher(f);
        std::vector<std::uint64_t> scratch;
        std::vector<code_t> shifts;
        std::vector<int> combo;
        std::vector<std::uint64_t> local;

#pragma omp for schedule(dynamic) reduction(+ : tested, fcount)
        for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(nblocks); ++bi) {
            const std::uint64_t start = static_cast<std::uint64_t>(bi) * block;
            // Blocks entirely beyond the current best cannot improve it.
            if (!collect && start > best.load(std::memory_order_relaxed)) continue;
            if (deadline_seconds > 0) {
                if (!expired.load(std::memory_order_relaxed) &&
                    now_seconds() > deadline_seconds) {
                    expired.store(true, std::memory_order_relaxed);
                }
                // While nothing has been found, an expired clock stops new
                // work; the whole level is then reported incomplete.
                if (expired.load(std::memory_order_relaxed) &&
                    (collect || best.load(std::memory_order_relaxed) == ~std::uint64_t(0))) {
                    skipped.store(true, std::memory_order_relaxed);
                    continue;
                }
            }
            const std::uint64_t stop = std::min(limit, start + block);
            unrank_combination(n, m, start, combo);
            for (std::uint64_t rank = start; rank < stop; ++rank) {
                ++tested;
                fill_shifts(combo, shifts);
                if (masks.covers(shifts, scratch) && matcher.feasible(shifts)) {
                    if (collect) {
                        ++fcount;
                        if (local.size() < cap) local.push_back(rank);
                    } else {
                        std::uint64_t cur = best.load(std::memory_order_relaxed);
                        while (rank < cur &&
                               !best.compare_exchange_weak(cur, rank, std::memory_order_relaxed)) {
                        }
                        break;  // later ranks in this block are worse
                    }
                }
                next_combination(combo, n);
            }
        }

        if (collect && !local.empty()) {
#pragma omp critical(pres_scan_collect)
            collected.insert(collected.end(), local.begin(), local.end());
        }
    }

    out.tested = tested;
    out.feasible_count = fcount;
    out.complete = !skipped.load();
    const std::uint64_t b = best.load();
    // A best found after blocks were dropped may not be lexicographically
    // first, so it is discarded along with the level.
    if (b != ~std::uint64_t(0) && out.complete) out.best_rank = b;
    if (collect) {
        std::sort(collected.begin(), collected.end());
        if (collected.size() > cap) collected.resize(cap);
        out.feasible_ranks = std::move(collected);
        if (!out.feasible_ranks.empty()) out.best_rank = out.feasible_ranks.front();
    }
    return out;
}

} // namespace detail

void validate_shift_set(const ShiftSet& c, int q) {
    if (c.shifts.empty()) throw InvalidArgument("shift set must be nonempty");
    if (c.shifts.front() != 0) throw InvalidArgument("shift set must contain 0 first");
    for (std::size_t i = 0; i < c.shifts.size(); ++i) {
        if (c.shifts[i] >= q) throw InvalidArgument("shift out of range");
        if (i > 0 && c.shifts[i] <= c.shifts[i - 1]) {
            throw InvalidArgument("shifts must be strictly increasing");
        }
    }
}

std::optional<FuncTable> feasible_shift_set(const FuncTable& f, const ShiftSet& c) {
    validate_shift_set(c, f.size());
    ShiftSetMatcher matcher(f);
    if (!matcher.feasible(c.shifts)) return std::nullopt;
    const GroupTable& g = f.group();
    std::vector<code_t> gv(f.size());
    for (int x = 0; x < f.size(); ++x) {
        gv[x] = g.sub(static_cast<code_t>(matcher.matching()[x]), f(x));
    }
    return FuncTable(f.group_ptr(), std::move(gv));
}

namespace {

ShiftSet shifts_from_rank(int q, int k, std::uint64_t rank) {
    std::vector<int> combo;
    detail::unrank_combination(q - 1, k - 1, rank, combo);
    ShiftSet s;
    s.shifts.resize(k);
    s.shifts[0] = 0;
    for (int i = 0; i < k - 1; ++i) s.shifts[i + 1] = static_cast<code_t>(combo[i] + 1);
    return s;
}

void verify_certificate(const FuncTable& f, PresCertificate& cert) {
    if (!cert.witness_g) throw InternalError("certificate lacks a witness");
    const FuncTable& g = *cert.witness_g;
    if (!is_permutation(add_func(g, f))) {
        throw InternalError("witness does not yield a permutation");
    }
    const std::vector<code_t> im = image(g);
    if (static_cast<int>(im.size()) != cert.pres || im != cert.witness_shifts.shifts) {
        throw InternalError("witness image does not match the shift set");
    }
    cert.verified = true;
}

} // namespace

PresCertificate pres_exact(const FuncTable& f, const SolveOptions& opts) {
    const int q = f.size();
    if (q > opts.order_limit) {
        throw InvalidArgument("group order " + std::to_string(q) +
                              " exceeds the solver order limit " +
                              std::to_string(opts.order_limit) + "; raise order_limit to force");
    }
    if (!f.group().is_abelian() && !opts.allow_nonabelian) {
        throw InvalidArgument("nonabelian group requires the convention acknowledgement flag");
    }

    const double started = std::chrono::duration<double>(
                               std::chrono::steady_clock::now().time_since_epoch())
                               .count();
    const double deadline = opts.time_limit_seconds > 0 ? started + opts.time_limit_seconds : 0;

    const PresBounds bounds = pres_bounds(f);
    const int k_lo = std::max(1, bounds.lower);
    int k_hi = bounds.upper;
    if (opts.max_k) k_hi = std::min(k_hi, *opts.max_k);

    PresCertificate cert;
    cert.lower_bound = bounds.lower;
    cert.upper_bound = bounds.upper;

    auto finish_time = [&]() {
        cert.seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now().time_since_epoch())
                           .count() -
                       started;
    };

    std::uint64_t budget_left =
        opts.max_sets == 0 ? ~std::uint64_t(0) : opts.max_sets;

    for (int k = k_lo; k <= k_hi; ++k) {
        const std::uint64_t total = detail::binom_capped(q - 1, k - 1);
        const std::uint64_t limit = std::min(total, budget_left);
        const detail::LevelScan scan =
            opts.jobs == 1
                ? detail::scan_level_serial(f, k, limit, false, 0, deadline)
                : detail::scan_level_parallel(f, k, limit, false, 0, opts.jobs, deadline);

        if (scan.best_rank) {
            cert.status = SolveStatus::Solved;
            cert.pres = k;
            cert.lower_bound = k;
            cert.witness_shifts = shifts_from_rank(q, k, *scan.best_rank);
            cert.witness_g = feasible_shift_set(f, cert.witness_shifts);
            cert.sets_tested_total += *scan.best_rank + 1;
            verify_certificate(f, cert);

            if (opts.enumerate_all_optimal) {
                const std::uint64_t climit = std::min(total, budget_left);
                const detail::LevelScan all =
                    opts.jobs == 1
                        ? detail::scan_level_serial(f, k, climit, true, opts.optimal_set_cap,
                                                    deadline)
                        : detail::scan_level_parallel(f, k, climit, true, opts.optimal_set_cap,
                                                      opts.jobs, deadline);
                cert.optimal_count = all.feasible_count;
                for (std::uint64_t r : all.feasible_ranks) {
                    cert.optimal_sets.push_back(shifts_from_rank(q, k, r));
                }
                if (!all.complete || climit < total) {
                    cert.limit_reason = "optimal-set enumeration truncated by budget";
                }
            }
            finish_time();
            return cert;
        }

        cert.sets_tested_total += scan.tested;
        if (!scan.complete || limit < total) {
            cert.status = SolveStatus::BoundLimited;
            cert.searched.push_back({k, scan.tested, false});
            cert.lower_bound = k;  // pres >= k; levels below are exhausted
            cert.limit_reason = !scan.complete && limit == total
                                    ? "time limit expired"
                                    : "candidate budget exhausted";
            finish_time();
            return cert;
        }
        cert.searched.push_back({k, scan.tested, true});
        budget_left -= scan.tested;
        cert.lower_bound = k + 1;
    }

    if (k_hi >= bounds.upper) {
        throw InternalError("no feasible shift set at the guaranteed upper bound");
    }
    cert.status = SolveStatus::BoundLimited;
    cert.limit_reason = "max_k below the upper bound was exhausted";
    finish_time();
    return cert;
}

int pres_oracle_bruteforce(const FuncTable& f) {
    const int q = f.size();
    if (q > 8) throw InvalidArgument("brute-force oracle is limited to q <= 8");
    const GroupTable& g = f.group();
    std::vector<code_t> h(q);
    std::iota(h.begin(), h.end(), code_t{0});
    int best = q;
    do {
        unsigned mask = 0;
        for (int x = 0; x < q; ++x) mask |= 1u << g.sub(f(x), h[x]);
        best = std::min(best, std::popcount(mask));
    } while (std::next_permutation(h.begin(), h.end()));
    return best;
}

FuncTable construct_upper_bound_g(const FuncTable& f) {
    const int q = f.size();
    const GroupTable& g = f.group();
    const std::vector<int> counts = preimage_counts(f);

    std::vector<bool> assigned(q, false);
    std::vector<bool> value_hit(q, false);
    std::vector<code_t> gv(q, 0);

    // Smallest preimage of every image point goes to 0.
    std::vector<int> rep(q, -1);
    for (int x = 0; x < q; ++x) {
        const code_t b = f(x);
        if (rep[b] < 0) rep[b] = x;
    }
    for (int b = 0; b < q; ++b) {
        if (counts[b] > 0) {
            gv[rep[b]] = 0;
            assigned[rep[b]] = true;
            value_hit[b] = true;
        }
    }
    // Remaining domain and codomain elements pair up in ascending order.
    std::vector<int> xs, ys;
    for (int x = 0; x < q; ++x) {
        if (!assigned[x]) xs.push_back(x);
    }
    for (int y = 0; y < q; ++y) {
        if (counts[y] == 0) ys.push_back(y);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        gv[xs[i]] = g.sub(static_cast<code_t>(ys[i]), f(xs[i]));
    }

    FuncTable result(f.group_ptr(), std::move(gv));
    if (!is_permutation(add_func(result, f))) {
        throw InternalError("constructed upper-bound witness is not valid");
    }
    return result;
}

} // namespace pres
