#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pres/func.hpp"
#include "pres/solver.hpp"

namespace pres {

struct FamilyPrediction {
    FuncTable f;
    int predicted_pres = 0;
    std::optional<FuncTable> witness_g;
    std::vector<code_t> witness_image;  // sorted image of the witness
    std::string source;                 // which construction produced the value
    bool witness_verified = false;      // g + f checked to be a permutation
};

// Additive polynomial L(x) = sum a_i x^(p^i) with coefficients a_0..a_{e-1}.
// pres(L) equals the kernel size; the witness maps greedy transversals of
// the preimage classes onto coset representatives of the image subgroup.
FamilyPrediction gen_p_polynomial(GroupPtr field, const std::vector<code_t>& coeffs);

// f(x) = x^((p-1)/2) over F_p, p an odd prime. Closed-form pres for p >= 7:
// (p-1)/2 when p = 3 (mod 4), (p+1)/2 when p = 1 (mod 4), with the explicit
// witness of each case. p in {3, 5} falls back to the exact solver.
FamilyPrediction gen_quadratic_character(int p);

struct PlanarCheck {
    FuncTable f;
    bool planar = false;
    std::uint32_t exponent = 0;
};

// x^exponent over an odd-characteristic field, tagged planar or not.
PlanarCheck gen_planar_monomial(GroupPtr field, std::uint32_t exponent);

// Necessary condition for pres(f) = u(f) = d when f(0) = 0 and f is d-to-1
// on nonzero elements: f(x) - f(y) avoids all pairwise differences of the
// shift set for nonzero x, y.
bool shift_difference_condition(const FuncTable& f, const ShiftSet& c);

// d when f(0) = 0 and every nonzero image point has exactly d preimages,
// all nonzero.
std::optional<int> d_to_one_on_nonzero(const FuncTable& f);

struct PipelineCandidate {
    ShiftSet shifts;
    FuncTable g;
    int delta_gf = 0;  // differential uniformity of g + f
};

struct PipelineReport {
    FuncTable f;
    bool planar = false;
    int delta_f = 0;
    int pres = 0;
    std::uint64_t optimal_total = 0;  // number of optimal shift sets
    std::vector<PipelineCandidate> candidates;
    int best_delta = 0;
    std::int64_t bound = 0;  // delta_f * (pres^2 - pres + 1)
};

// Turns a function (planar preferred) into low-DU permutations: solve pres,
// realize up to candidate_cap optimal witnesses g, and rank the resulting
// permutations g + f by differential uniformity.
PipelineReport lowdu_pipeline(const FuncTable& f, int candidate_cap = 50, int jobs = 1,
                              SolveOptions base = {});

} // namespace pres
