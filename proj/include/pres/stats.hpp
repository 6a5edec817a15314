#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "pres/func.hpp"

namespace pres {

// (M_0, ..., M_u) where M_r counts codomain points with exactly r preimages.
struct PreimageDistribution {
    std::vector<std::int64_t> m;  // indices 0..u; m[u] >= 1 for q >= 1
    int uniformity = 0;           // u = max preimage-set size
    int image_size = 0;           // V = q - M_0
};

PreimageDistribution preimage_distribution(const FuncTable& f);

// Ordered s-tuples of pairwise-distinct points sharing one image, via the
// falling-factorial sum over the preimage distribution. s < 2 is an error;
// s > u gives 0.
mpz_class n_s(const PreimageDistribution& dist, int s);
mpz_class n_s(const FuncTable& f, int s);

// x -> f(x+a) + (-f(x)), a != 0. The right-negation convention also covers
// nonabelian groups.
FuncTable difference_operator(const FuncTable& f, code_t a);

// Difference distribution table: (q-1) x q counts, row a (1..q-1), column b.
struct DifferenceTable {
    int q = 0;
    std::vector<std::int32_t> counts;  // (q-1)*q, row-major; row index a-1

    std::int32_t at(int a, int b) const {
        return counts[static_cast<std::size_t>(a - 1) * q + b];
    }
};

// jobs <= 1 runs the serial reference; jobs == 0 uses all hardware threads;
// jobs > 1 pins the OpenMP team size. Results are identical in all modes.
DifferenceTable ddt(const FuncTable& f, int jobs = 1, bool allow_nonabelian = false);
DifferenceTable ddt_serial(const FuncTable& f);
DifferenceTable ddt_parallel(const FuncTable& f, int jobs);

int differential_uniformity(const FuncTable& f, int jobs = 1, bool allow_nonabelian = false);
bool is_planar(const FuncTable& f, int jobs = 1);

// Nb_f = sum over b of (#f^{-1}(b) - 1)^2; equals n_s(f, 2).
std::int64_t imbalance(const FuncTable& f);

// NB_f = sum over a != 0 of Nb of the difference operator in direction a.
std::int64_t derivative_imbalance(const FuncTable& f, int jobs = 1,
                                  bool allow_nonabelian = false);

struct AmbiguityReport {
    std::int64_t a = 0;                       // A(f)
    std::map<int, std::int64_t> alpha;        // i -> alpha_i, nonzero entries
    std::vector<std::int64_t> rows;           // row-a ambiguity, index a-1
};

AmbiguityReport ambiguity(const FuncTable& f, int jobs = 1, bool allow_nonabelian = false);

struct M0Truncation {
    int cutoff = 0;        // last s included
    mpq_class partial;     // sum_{s=2}^{cutoff} (-1)^s N_s / s!
};

struct M0Report {
    mpz_class m0;          // value of the full alternating sum
    mpq_class lower;       // N_2/2! - N_3/3!
    mpq_class upper;       // N_2/2!
    std::vector<M0Truncation> truncations;  // cutoffs 2..u
};

// Exact rational evaluation of M_0 = sum (-1)^s N_s / s!; asserts agreement
// with the counted M_0 (InternalError otherwise). Even cutoffs bound M_0
// from above, odd cutoffs from below.
M0Report m0_from_ns(const FuncTable& f);

// Evaluates P_f(z) = sum M_r z^r and its Taylor form about 1; asserts both
// agree and that P_f(1) = P_f'(1) = q.
mpq_class generating_poly_eval(const FuncTable& f, const mpq_class& z);

struct PresBounds {
    int lower = 0;          // u(f)
    int upper = 0;          // q - V(f) + 1
    bool lb_eq_ub = false;
    bool char_holds = false;  // permutation, or a unique point with >1 preimages
};

PresBounds pres_bounds(const FuncTable& f);

// Everything about one function in a single record.
struct StatsReport {
    int q = 0;
    PreimageDistribution dist;
    std::vector<mpz_class> ns;                 // index s-2, s = 2..u
    std::optional<int> delta;                  // absent for nonabelian groups
    std::int64_t nb = 0;
    std::optional<std::int64_t> nbb;           // NB_f
    std::optional<std::int64_t> ambiguity_a;   // A(f)
    std::map<int, std::int64_t> alpha;
    PresBounds bounds;
};

// Delta-based fields are filled for abelian groups, or for nonabelian ones
// only when the caller acknowledges the right-negation convention.
StatsReport function_stats(const FuncTable& f, bool allow_nonabelian_delta = false,
                           int jobs = 1);

} // namespace pres
