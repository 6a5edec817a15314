#include "pres/families.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

#include "pres/stats.hpp"

namespace pres {

namespace {

bool verify_witness(const FuncTable& f, const FuncTable& g, int expected_v) {
    return is_permutation(add_func(g, f)) && image_size(g) == expected_v;
}

} // namespace

FamilyPrediction gen_p_polynomial(GroupPtr field, const std::vector<code_t>& coeffs) {
    if (!field->is_field()) throw InvalidArgument("p-polynomials require a field group");
    const GroupTable& g = *field;
    const int q = g.order();
    const int p = g.characteristic();
    const int e = g.degree();
    if (static_cast<int>(coeffs.size()) != e) {
        throw InvalidArgument("expected " + std::to_string(e) + " coefficients a_0..a_{e-1}");
    }

    // L(x) = sum a_i x^(p^i)
    std::vector<code_t> lv(q, 0);
    for (int x = 0; x < q; ++x) {
        code_t acc = 0;
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) {
            acc = g.add(acc, g.mul(coeffs[i], g.pow(x, pe)));
            pe *= p;
        }
        lv[x] = acc;
    }
    FuncTable L(field, std::move(lv));

    // Additivity sanity check; guaranteed by construction.
    for (int x = 0; x < std::min(q, 16); ++x) {
        for (int y = 0; y < std::min(q, 16); ++y) {
            if (L(g.add(x, y)) != g.add(L(x), L(y))) {
                throw InternalError("p-polynomial evaluation is not additive");
            }
        }
    }

    const std::vector<int> counts = preimage_counts(L);
    const int kernel = counts[0];  // = #L^{-1}(0); every image point shares it
    const std::vector<code_t> im = image(L);

    // Coset representatives of im(L): smallest uncovered code, ascending.
    std::vector<code_t> reps;
    std::vector<bool> covered(q, false);
    for (int c = 0; c < q; ++c) {
        if (covered[c]) continue;
        reps.push_back(static_cast<code_t>(c));
        for (code_t y : im) covered[g.add(c, y)] = true;
    }
    if (static_cast<int>(reps.size()) != kernel) {
        throw InternalError("coset count does not match the kernel size");
    }

    // P_i = the i-th smallest preimage of every image point; g maps P_i to
    // the i-th coset representative.
    std::vector<std::vector<int>> classes(q);
    for (int x = 0; x < q; ++x) classes[L(x)].push_back(x);  // ascending by code
    std::vector<code_t> gv(q, 0);
    for (code_t b : im) {
        const auto& cls = classes[b];
        for (std::size_t i = 0; i < cls.size(); ++i) gv[cls[i]] = reps[i];
    }
    FuncTable witness(field, std::move(gv));

    FamilyPrediction out{
        .f = L,
        .predicted_pres = kernel,
        .witness_g = witness,
        .witness_image = image(witness),
        .source = "additive kernel-coset construction",
        .witness_verified = verify_witness(L, witness, kernel),
    };
    if (!out.witness_verified) {
        throw InternalError("p-polynomial witness failed verification");
    }
    return out;
}

FamilyPrediction gen_quadratic_character(int p) {
    if (!is_prime(p) || p == 2) throw InvalidArgument("p must be an odd prime");
    GroupPtr field = make_field(p, 1);
    const GroupTable& g = *field;
    std::vector<code_t> fv(p);
    for (int x = 0; x < p; ++x) fv[x] = g.pow(x, static_cast<std::uint64_t>((p - 1) / 2));
    FuncTable f(field, std::move(fv));

    if (p < 7) {
        // Too small for the general constructions; exact solve instead.
        PresCertificate cert = pres_exact(f);
        FamilyPrediction out{
            .f = f,
            .predicted_pres = cert.pres,
            .witness_g = cert.witness_g,
            .witness_image = cert.witness_shifts.shifts,
            .source = "exact solver (below the construction range)",
            .witness_verified = cert.verified,
        };
        return out;
    }

    std::vector<int> pre_one, pre_minus;
    for (int x = 1; x < p; ++x) {
        if (f(x) == 1) {
            pre_one.push_back(x);
        } else {
            pre_minus.push_back(x);
        }
    }

    std::vector<code_t> img_one, img_minus;
    int predicted;
    if (p % 4 == 3) {
        // S = {0} u {4t-1, 4t : 1 <= t <= (p-3)/4}; both halves map onto S.
        std::vector<code_t> s{0};
        for (int t = 1; t <= (p - 3) / 4; ++t) {
            s.push_back(static_cast<code_t>(4 * t - 1));
            s.push_back(static_cast<code_t>(4 * t));
        }
        img_one = s;
        img_minus = s;
        predicted = (p - 1) / 2;
    } else {
        // Shared core {0} u {4t-1, 4t : t <= (p-5)/4}, plus p-3 on the
        // square side and p-2 on the nonsquare side.
        std::vector<code_t> core{0};
        for (int t = 1; t <= (p - 5) / 4; ++t) {
            core.push_back(static_cast<code_t>(4 * t - 1));
            core.push_back(static_cast<code_t>(4 * t));
        }
        img_one = core;
        img_one.push_back(static_cast<code_t>(p - 3));
        img_minus = core;
        img_minus.push_back(static_cast<code_t>(p - 2));
        predicted = (p + 1) / 2;
    }

    if (img_one.size() != pre_one.size() || img_minus.size() != pre_minus.size()) {
        throw InternalError("quadratic character image sizes are inconsistent");
    }
    std::vector<code_t> gv(p, 0);
    for (std::size_t i = 0; i < pre_one.size(); ++i) gv[pre_one[i]] = img_one[i];
    for (std::size_t i = 0; i < pre_minus.size(); ++i) gv[pre_minus[i]] = img_minus[i];
    FuncTable witness(field, std::move(gv));

    FamilyPrediction out{
        .f = f,
        .predicted_pres = predicted,
        .witness_g = witness,
        .witness_image = image(witness),
        .source = p % 4 == 3 ? "residue-class matching, p = 3 (mod 4)"
                             : "residue-class matching, p = 1 (mod 4)",
        .witness_verified = verify_witness(f, witness, predicted),
    };
    if (!out.witness_verified) {
        throw InternalError("quadratic character witness failed verification");
    }
    return out;
}

PlanarCheck gen_planar_monomial(GroupPtr field, std::uint32_t exponent) {
    if (!field->is_field()) throw InvalidArgument("monomials require a field group");
    if (field->characteristic() == 2) {
        throw InvalidArgument("planar functions do not exist in characteristic 2");
    }
    const GroupTable& g = *field;
    std::vector<code_t> fv(g.order());
    for (int x = 0; x < g.order(); ++x) fv[x] = g.pow(x, exponent);
    FuncTable f(field, std::move(fv));
    const bool planar = is_planar(f);
    return {std::move(f), planar, exponent};
}

bool shift_difference_condition(const FuncTable& f, const ShiftSet& c) {
    validate_shift_set(c, f.size());
    if (f(0) != 0) throw InvalidArgument("shift difference condition assumes f(0) = 0");
    const GroupTable& g = f.group();
    const int q = f.size();

    std::vector<bool> forbidden(q, false);
    for (code_t ci : c.shifts) {
        for (code_t cj : c.shifts) {
            if (ci != cj) forbidden[g.sub(ci, cj)] = true;
        }
    }
    for (int x = 1; x < q; ++x) {
        for (int y = 1; y < q; ++y) {
            if (forbidden[g.sub(f(x), f(y))]) return false;
        }
    }
    return true;
}

std::optional<int> d_to_one_on_nonzero(const FuncTable& f) {
    if (f(0) != 0) return std::nullopt;
    const std::vector<int> counts = preimage_counts(f);
    int d = 0;
    for (int b = 1; b < f.size(); ++b) {
        if (counts[b] == 0) continue;
        if (d == 0) {
            d = counts[b];
        } else if (counts[b] != d) {
            return std::nullopt;
        }
    }
    if (d == 0) return std::nullopt;       // constant zero
    if (counts[0] != 1) return std::nullopt;  // zero must have 0 as its only preimage
    return d;
}

PipelineReport lowdu_pipeline(const FuncTable& f, int candidate_cap, int jobs,
                              SolveOptions base) {
    if (candidate_cap < 1) throw InvalidArgument("candidate cap must be >= 1");
    base.jobs = jobs;
    base.enumerate_all_optimal = true;
    base.optimal_set_cap = static_cast<std::uint64_t>(candidate_cap);

    PipelineReport rep{.f = f};
    rep.delta_f = differential_uniformity(f, jobs);
    rep.planar = rep.delta_f == 1;

    PresCertificate cert = pres_exact(f, base);
    if (cert.status != SolveStatus::Solved) {
        throw InvalidArgument("pres solve was budget-limited: " + cert.limit_reason);
    }
    rep.pres = cert.pres;
    rep.optimal_total = cert.optimal_count;
    rep.bound = static_cast<std::int64_t>(rep.delta_f) *
                (static_cast<std::int64_t>(rep.pres) * rep.pres - rep.pres + 1);

    rep.candidates.reserve(cert.optimal_sets.size());
    for (const ShiftSet& s : cert.optimal_sets) {
        auto g = feasible_shift_set(f, s);
        if (!g) throw InternalError("optimal shift set lost feasibility");
        rep.candidates.push_back({s, std::move(*g), 0});
    }

    // Independent candidates; DU evaluation dominates, so spread them out.
    const int n = static_cast<int>(rep.candidates.size());
    if (jobs != 1) {
        const int nt = jobs == 0 ? omp_get_max_threads() : jobs;
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (int i = 0; i < n; ++i) {
            PipelineCandidate& cand = rep.candidates[i];
            cand.delta_gf = differential_uniformity(add_func(cand.g, f));
        }
    } else {
        for (int i = 0; i < n; ++i) {
            PipelineCandidate& cand = rep.candidates[i];
            cand.delta_gf = differential_uniformity(add_func(cand.g, f));
        }
    }

    rep.best_delta = 0;
    for (const PipelineCandidate& cand : rep.candidates) {
        if (rep.best_delta == 0 || cand.delta_gf < rep.best_delta) {
            rep.best_delta = cand.delta_gf;
        }
        if (cand.delta_gf > rep.bound) {
            throw InternalError("candidate exceeds the differential uniformity bound");
        }
        if (!is_permutation(add_func(cand.g, f))) {
            throw InternalError("pipeline candidate is not a permutation witness");
        }
    }
    return rep;
}

} // namespace pres
