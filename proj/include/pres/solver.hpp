#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pres/func.hpp"
#include "pres/stats.hpp"

namespace pres {

// Candidate image set for g: strictly increasing codes, first element 0.
// Pinning 0 loses nothing: if g + f is a permutation, so is (-c1 + g) + f.
struct ShiftSet {
    std::vector<code_t> shifts;
};

void validate_shift_set(const ShiftSet& c, int q);

// Returns a witness g with image inside C and g + f a permutation, if one
// exists. Deterministic for a fixed input.
std::optional<FuncTable> feasible_shift_set(const FuncTable& f, const ShiftSet& c);

struct SearchLevel {
    int k = 0;
    std::uint64_t sets_tested = 0;
    bool exhausted = false;  // every candidate at this k was tested and infeasible
};

enum class SolveStatus { Solved, BoundLimited };

enum class SolveMethod { MatchingSearch, BruteForceOracle, ClosedForm };

struct SolveOptions {
    std::optional<int> max_k;
    int jobs = 1;                      // <=1 serial, 0 auto, >1 team size
    bool enumerate_all_optimal = false;
    std::uint64_t optimal_set_cap = 100;  // how many optimal sets to retain
    std::uint64_t max_sets = 0;        // total candidate budget; 0 = unlimited
    double time_limit_seconds = 0;     // 0 = none
    bool allow_nonabelian = false;
    int order_limit = 31;              // guard against combinatorial blowup
};

struct PresCertificate {
    SolveStatus status = SolveStatus::Solved;
    SolveMethod method = SolveMethod::MatchingSearch;

    int pres = 0;                       // valid when Solved
    std::optional<FuncTable> witness_g;
    ShiftSet witness_shifts;
    std::vector<SearchLevel> searched;  // exhausted levels below pres

    // Bound-limited details: pres > last exhausted k; upper bound still known.
    int lower_bound = 0;                // u(f) or better (last exhausted k + 1)
    int upper_bound = 0;                // q - V(f) + 1

    bool verified = false;

    std::uint64_t optimal_count = 0;    // all-optimal mode
    std::vector<ShiftSet> optimal_sets; // lexicographically first, capped

    std::uint64_t sets_tested_total = 0;
    double seconds = 0;
    std::string limit_reason;           // why the search stopped early
};

// Exact permutation resemblance with an optimality certificate: k-ascending
// lexicographic scan over shift sets with perfect-matching feasibility.
// The first feasible k is optimal. Identical results for any jobs value.
PresCertificate pres_exact(const FuncTable& f, const SolveOptions& opts = {});

// Ground truth by scanning all q! permutations h and minimizing V(f - h).
// Test oracle only; enforced q <= 8.
int pres_oracle_bruteforce(const FuncTable& f);

// The constructive upper-bound witness: one representative per preimage set
// is sent to 0 (smallest code), remaining domain and codomain elements are
// paired in ascending order. Always returns g with g + f a permutation and
// V(g) <= q - V(f) + 1.
FuncTable construct_upper_bound_g(const FuncTable& f);

// Internal enumeration helpers, exposed for tests and the benchmark.
namespace detail {

std::uint64_t binom_capped(int n, int k);

// Lexicographic combinations of size k from {0..n-1}.
void unrank_combination(int n, int k, std::uint64_t rank, std::vector<int>& out);
bool next_combination(std::vector<int>& c, int n);

struct LevelScan {
    std::uint64_t tested = 0;
    bool complete = false;                      // whole allowed range scanned
    std::optional<std::uint64_t> best_rank;     // lexicographically first feasible
    std::uint64_t feasible_count = 0;           // collect mode
    std::vector<std::uint64_t> feasible_ranks;  // collect mode, ascending, capped
};

// Scans candidate shift sets {0} u (combination of codes 1..q-1) at size k,
// ranks [0, limit). In find mode stops at the lexicographically first
// feasible candidate; in collect mode scans everything, counting feasible
// sets and retaining the first `cap` ranks.
LevelScan scan_level_serial(const FuncTable& f, int k, std::uint64_t limit, bool collect,
                            std::uint64_t cap, double deadline_seconds = 0);
LevelScan scan_level_parallel(const FuncTable& f, int k, std::uint64_t limit, bool collect,
                              std::uint64_t cap, int jobs, double deadline_seconds = 0);

} // namespace detail

} // namespace pres
