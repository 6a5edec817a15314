#include "pres/stats.hpp"

#include <algorithm>

#include <omp.h>

namespace pres {

namespace {

void require_delta_allowed(const FuncTable& f, bool allow_nonabelian) {
    if (!f.group().is_abelian() && !allow_nonabelian) {
        throw InvalidArgument(
            "difference-based statistics on a nonabelian group require the "
            "convention acknowledgement flag");
    }
}

int team_size(int jobs) { return jobs == 0 ? omp_get_max_threads() : jobs; }

void ddt_rows(const FuncTable& f, DifferenceTable& t, int a_begin, int a_end) {
    const GroupTable& g = f.group();
    const int q = f.size();
    for (int a = a_begin; a < a_end; ++a) {
        std::int32_t* row = &t.counts[static_cast<std::size_t>(a - 1) * q];
        for (int x = 0; x < q; ++x) {
            const code_t b = g.sub(f(g.add(x, a)), f(x));
            ++row[b];
        }
    }
}

std::int64_t row_nb(const DifferenceTable& t, int a) {
    const int q = t.q;
    std::int64_t s = 0;
    for (int b = 0; b < q; ++b) {
        const std::int64_t d = t.at(a, b) - 1;
        s += d * d;
    }
    return s;
}

} // namespace

PreimageDistribution preimage_distribution(const FuncTable& f) {
    const std::vector<int> counts = preimage_counts(f);
    const int q = f.size();
    int u = 0, v = 0;
    for (int c : counts) {
        u = std::max(u, c);
        if (c > 0) ++v;
    }
    PreimageDistribution d;
    d.uniformity = u;
    d.image_size = v;
    d.m.assign(u + 1, 0);
    for (int c : counts) ++d.m[c];
    (void)q;
    return d;
}

mpz_class n_s(const PreimageDistribution& dist, int s) {
    if (s < 2) throw InvalidArgument("n_s requires s >= 2");
    const int u = dist.uniformity;
    mpz_class total = 0;
    for (int r = s; r <= u; ++r) {
        if (dist.m[r] == 0) continue;
        mpz_class ff = 1;  // (r)_s = r (r-1) ... (r-s+1)
        for (int i = 0; i < s; ++i) ff *= r - i;
        total += ff * mpz_class(static_cast<long>(dist.m[r]));
    }
    return total;
}

mpz_class n_s(const FuncTable& f, int s) { return n_s(preimage_distribution(f), s); }

FuncTable difference_operator(const FuncTable& f, code_t a) {
    if (a == 0) throw InvalidArgument("difference direction must be nonzero");
    if (a >= f.size()) throw InvalidArgument("difference direction out of range");
    const GroupTable& g = f.group();
    std::vector<code_t> v(f.size());
    for (int x = 0; x < f.size(); ++x) v[x] = g.sub(f(g.add(x, a)), f(x));
    return FuncTable(f.group_ptr(), std::move(v));
}

DifferenceTable ddt_serial(const FuncTable& f) {
    const int q = f.size();
    DifferenceTable t;
    t.q = q;
    t.counts.assign(static_cast<std::size_t>(q - 1) * q, 0);
    ddt_rows(f, t, 1, q);
    return t;
}

DifferenceTable ddt_parallel(const FuncTable& f, int jobs) {
    const int q = f.size();
    DifferenceTable t;
    t.q = q;
    t.counts.assign(static_cast<std::size_t>(q - 1) * q, 0);
#pragma omp parallel for schedule(static) num_threads(team_size(jobs))
    for (int a = 1; a < q; ++a) {
        ddt_rows(f, t, a, a + 1);
    }
    return t;
}

DifferenceTable ddt(const FuncTable& f, int jobs, bool allow_nonabelian) {
    require_delta_allowed(f, allow_nonabelian);
    return jobs == 1 ? ddt_serial(f) : ddt_parallel(f, jobs);
}

int differential_uniformity(const FuncTable& f, int jobs, bool allow_nonabelian) {
    const DifferenceTable t = ddt(f, jobs, allow_nonabelian);
    return *std::max_element(t.counts.begin(), t.counts.end());
}

bool is_planar(const FuncTable& f, int jobs) {
    return differential_uniformity(f, jobs) == 1;
}

std::int64_t imbalance(const FuncTable& f) {
    std::int64_t s = 0;
    for (int c : preimage_counts(f)) {
        const std::int64_t d = c - 1;
        s += d * d;
    }
    return s;
}

std::int64_t derivative_imbalance(const FuncTable& f, int jobs, bool allow_nonabelian) {
    const DifferenceTable t = ddt(f, jobs, allow_nonabelian);
    std::int64_t s = 0;
    for (int a = 1; a < f.size(); ++a) s += row_nb(t, a);
    return s;
}

AmbiguityReport ambiguity(const FuncTable& f, int jobs, bool allow_nonabelian) {
    const DifferenceTable t = ddt(f, jobs, allow_nonabelian);
    const int q = f.size();
    AmbiguityReport r;
    r.rows.assign(q - 1, 0);
    for (int a = 1; a < q; ++a) {
        std::int64_t row = 0;
        for (int b = 0; b < q; ++b) {
            const std::int64_t c = t.at(a, b);
            row += c * (c - 1) / 2;
            ++r.alpha[static_cast<int>(c)];
        }
        r.rows[a - 1] = row;
        r.a += row;
    }
    return r;
}

M0Report m0_from_ns(const FuncTable& f) {
    const PreimageDistribution dist = preimage_distribution(f);
    const int u = dist.uniformity;

    M0Report rep;
    mpq_class acc = 0;
    mpz_class fact = 1;  // s!
    std::vector<mpz_class> ns_values(std::max(0, u - 1));
    for (int s = 2; s <= u; ++s) ns_values[s - 2] = n_s(dist, s);
    for (int s = 2; s <= u; ++s) {
        fact *= s;
        mpq_class term(ns_values[s - 2], fact);
        term.canonicalize();
        if (s % 2) {
            acc -= term;
        } else {
            acc += term;
        }
        rep.truncations.push_back({s, acc});
    }

    if (acc.get_den() != 1) {
        throw InternalError("alternating preimage sum is not an integer");
    }
    rep.m0 = acc.get_num();
    if (rep.m0 != dist.m[0]) {
        throw InternalError("alternating preimage sum disagrees with the counted M_0");
    }

    const mpz_class n2 = u >= 2 ? ns_values[0] : mpz_class(0);
    const mpz_class n3 = u >= 3 ? ns_values[1] : mpz_class(0);
    rep.upper = mpq_class(n2, 2);
    rep.upper.canonicalize();
    rep.lower = rep.upper - mpq_class(n3, 6);
    rep.lower.canonicalize();
    return rep;
}

mpq_class generating_poly_eval(const FuncTable& f, const mpq_class& z) {
    const PreimageDistribution dist = preimage_distribution(f);
    const int q = f.size();
    const int u = dist.uniformity;

    // direct form: sum M_r z^r
    mpq_class direct = 0;
    mpq_class zp = 1;
    for (int r = 0; r <= u; ++r) {
        direct += mpq_class(static_cast<long>(dist.m[r])) * zp;
        zp *= z;
    }

    // Taylor form about 1: q + q (z-1) + sum N_s/s! (z-1)^s
    const mpq_class w = z - 1;
    mpq_class taylor = mpq_class(q) + mpq_class(q) * w;
    mpq_class wp = w * w;
    mpz_class fact = 2;
    for (int s = 2; s <= u; ++s) {
        if (s > 2) {
            fact *= s;
            wp *= w;
        }
        mpq_class term(n_s(dist, s), fact);
        term.canonicalize();
        taylor += term * wp;
    }

    if (direct != taylor) {
        throw InternalError("generating function forms disagree");
    }

    // P_f(1) = q and P_f'(1) = q are integer identities; check both.
    long long sum_m = 0, sum_rm = 0;
    for (int r = 0; r <= u; ++r) {
        sum_m += dist.m[r];
        sum_rm += static_cast<long long>(r) * dist.m[r];
    }
    if (sum_m != q || sum_rm != q) {
        throw InternalError("preimage distribution does not sum to the group order");
    }
    return direct;
}

PresBounds pres_bounds(const FuncTable& f) {
    const int q = f.size();
    const std::vector<int> counts = preimage_counts(f);
    int u = 0, v = 0, heavy = 0;
    for (int c : counts) {
        u = std::max(u, c);
        if (c > 0) ++v;
        if (c > 1) ++heavy;
    }
    PresBounds b;
    b.lower = u;
    b.upper = q - v + 1;
    b.lb_eq_ub = b.lower == b.upper;
    b.char_holds = (u == 1) || heavy == 1;
    if (b.lb_eq_ub != b.char_holds) {
        throw InternalError("bound-coincidence characterization violated");
    }
    return b;
}

StatsReport function_stats(const FuncTable& f, bool allow_nonabelian_delta, int jobs) {
    StatsReport r;
    r.q = f.size();
    r.dist = preimage_distribution(f);
    for (int s = 2; s <= r.dist.uniformity; ++s) r.ns.push_back(n_s(r.dist, s));
    r.nb = imbalance(f);
    r.bounds = pres_bounds(f);

    if (f.group().is_abelian() || allow_nonabelian_delta) {
        const DifferenceTable t = ddt(f, jobs, allow_nonabelian_delta);
        int delta = 0;
        std::int64_t nbb = 0;
        AmbiguityReport amb;
        amb.rows.assign(r.q - 1, 0);
        for (int a = 1; a < r.q; ++a) {
            std::int64_t row = 0;
            for (int b = 0; b < r.q; ++b) {
                const std::int64_t c = t.at(a, b);
                delta = std::max<int>(delta, static_cast<int>(c));
                nbb += (c - 1) * (c - 1);
                row += c * (c - 1) / 2;
                ++amb.alpha[static_cast<int>(c)];
            }
            amb.rows[a - 1] = row;
            amb.a += row;
        }
        r.delta = delta;
        r.nbb = nbb;
        r.ambiguity_a = amb.a;
        r.alpha = std::move(amb.alpha);
    }
    return r;
}

} // namespace pres
