#include "pres/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "pres/equivalence.hpp"
#include "pres/families.hpp"
#include "pres/func.hpp"
#include "pres/io.hpp"
#include "pres/solver.hpp"
#include "pres/stats.hpp"

namespace pres {

namespace {

FuncTable random_func(GroupPtr g, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, g->order() - 1);
    std::vector<code_t> v(g->order());
    for (code_t& x : v) x = static_cast<code_t>(pick(rng));
    return FuncTable(std::move(g), std::move(v));
}

FuncTable random_permutation(GroupPtr g, std::mt19937_64& rng) {
    std::vector<code_t> v(g->order());
    for (int i = 0; i < g->order(); ++i) v[i] = static_cast<code_t>(i);
    std::shuffle(v.begin(), v.end(), rng);
    return FuncTable(std::move(g), std::move(v));
}

FuncTable monomial(GroupPtr g, std::uint32_t d) {
    std::vector<code_t> v(g->order());
    for (int x = 0; x < g->order(); ++x) v[x] = g->pow(x, d);
    return FuncTable(std::move(g), std::move(v));
}

AffineMap random_affine_permutation(GroupPtr g, std::mt19937_64& rng) {
    const int e = g->degree();
    std::uniform_int_distribution<int> pick(0, g->order() - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<code_t> coeffs(e);
        for (code_t& c : coeffs) c = static_cast<code_t>(pick(rng));
        std::vector<code_t> lv(g->order());
        for (int x = 0; x < g->order(); ++x) {
            code_t acc = 0;
            std::uint64_t pe = 1;
            for (int i = 0; i < e; ++i) {
                acc = g->add(acc, g->mul(coeffs[i], g->pow(x, pe)));
                pe *= g->characteristic();
            }
            lv[x] = acc;
        }
        FuncTable linear(g, std::move(lv));
        if (!is_permutation(linear)) continue;
        return {std::move(linear), static_cast<code_t>(pick(rng))};
    }
    throw InternalError("failed to sample an affine permutation");
}

std::vector<GroupPtr> group_pool(int q_max) {
    std::vector<GroupPtr> pool;
    for (int n = 2; n <= q_max; ++n) pool.push_back(make_cyclic_product({n}));
    for (int q : {4, 8, 9, 16, 25, 27}) {
        if (q > q_max) continue;
        for (int p = 2; p * p <= q; ++p) {
            if (!is_prime(p)) continue;
            int e = 0;
            long long t = q;
            while (t % p == 0) {
                t /= p;
                ++e;
            }
            if (t == 1) {
                pool.push_back(make_field(p, e));
                break;
            }
        }
    }
    return pool;
}

struct Checker {
    std::vector<CheckResult> results;
    void record(const std::string& name, bool pass, const std::string& details = "") {
        results.push_back({name, pass, details});
    }
};

std::vector<CheckResult> suite_thm21(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    const int q_max = std::min(opts.q_max, 9);
    for (const GroupPtr& g : group_pool(q_max)) {
        const int per_group = std::max(1, opts.samples / 8);
        int bad = 0;
        std::string note;
        for (int t = 0; t < per_group; ++t) {
            FuncTable f = random_func(g, rng);
            const PresBounds b = pres_bounds(f);
            const PresCertificate cert = pres_exact(f, {.jobs = opts.jobs});
            const bool in_bounds = b.lower <= cert.pres && cert.pres <= b.upper;
            const bool perm_iff_one = is_permutation(f) == (cert.pres == 1);
            const bool const_iff_q = (image_size(f) == 1) == (cert.pres == f.size());
            if (!(in_bounds && perm_iff_one && const_iff_q)) {
                ++bad;
                if (note.empty()) {
                    note = "pres=" + std::to_string(cert.pres) + " bounds=[" +
                           std::to_string(b.lower) + "," + std::to_string(b.upper) + "]";
                }
            }
        }
        c.record("bounds hold on " + g->spec() + " (" + std::to_string(per_group) + " samples)",
                 bad == 0, bad ? note : "");
    }
    return c.results;
}

std::vector<CheckResult> suite_thm22(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    // Exhaustive over small cyclic groups. pres_bounds itself cross-checks
    // the equivalence and throws on violation.
    for (int n = 2; n <= std::min(5, opts.q_max); ++n) {
        GroupPtr g = make_cyclic_product({n});
        std::vector<code_t> v(n, 0);
        long long total = 0, coincide = 0;
        bool ok = true;
        while (true) {
            FuncTable f(g, v);
            const PresBounds b = pres_bounds(f);
            ++total;
            if (b.lb_eq_ub) ++coincide;
            if (b.lb_eq_ub != b.char_holds) ok = false;
            int i = 0;
            while (i < n && ++v[i] == n) v[i++] = 0;
            if (i == n) break;
        }
        c.record("bound coincidence on all " + std::to_string(total) + " functions over zn:" +
                     std::to_string(n),
                 ok, std::to_string(coincide) + " coincide");
    }
    for (int q : {7, 8, 9, 11, 13}) {
        GroupPtr g = q == 8 ? make_field(2, 3) : (q == 9 ? make_field(3, 2) : make_field(q, 1));
        bool ok = true;
        const int per_field = std::max(1, opts.samples);
        for (int t = 0; t < per_field; ++t) {
            const PresBounds b = pres_bounds(random_func(g, rng));
            if (b.lb_eq_ub != b.char_holds) ok = false;
        }
        c.record("bound coincidence on gf:" + std::to_string(q) + " (" +
                     std::to_string(per_field) + " samples)",
                 ok);
    }
    return c.results;
}

std::vector<CheckResult> suite_thm23(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    const std::vector<std::pair<int, int>> fields{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}};
    for (auto [p, e] : fields) {
        GroupPtr g = make_field(p, e);
        std::uniform_int_distribution<int> pick(0, g->order() - 1);
        int bad = 0;
        std::string note;
        const int count = 10;
        for (int t = 0; t < count; ++t) {
            std::vector<code_t> coeffs(e);
            for (code_t& a : coeffs) a = static_cast<code_t>(pick(rng));
            const FamilyPrediction pred = gen_p_polynomial(g, coeffs);
            const int u = pres_bounds(pred.f).lower;
            const PresCertificate cert = pres_exact(pred.f, {.jobs = opts.jobs});
            if (!(pred.witness_verified && cert.pres == pred.predicted_pres &&
                  cert.pres == u)) {
                ++bad;
                if (note.empty()) {
                    note = "predicted=" + std::to_string(pred.predicted_pres) +
                           " solved=" + std::to_string(cert.pres);
                }
            }
        }
        c.record("additive polynomials over " + g->spec(), bad == 0, note);
    }
    return c.results;
}

std::vector<CheckResult> suite_eq5(const VerifyOptions& opts) {
    Checker c;
    std::vector<int> ps = opts.p_list;
    if (ps.empty()) ps = {7, 11, 13};
    for (int p : ps) {
        const FamilyPrediction pred = gen_quadratic_character(p);
        const int expected = p % 4 == 1 ? (p + 1) / 2 : (p - 1) / 2;
        const PresCertificate cert = pres_exact(pred.f, {.jobs = opts.jobs});
        const bool ok = pred.predicted_pres == expected && pred.witness_verified &&
                        cert.pres == expected;
        c.record("power-residue map over gf:" + std::to_string(p), ok,
                 "predicted=" + std::to_string(pred.predicted_pres) +
                     " solved=" + std::to_string(cert.pres));
    }
    return c.results;
}

std::vector<CheckResult> suite_cor32(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    for (int q : {7, 9}) {
        GroupPtr g = q == 9 ? make_field(3, 2) : make_field(q, 1);
        FuncTable f = monomial(g, 2);
        const int base = pres_exact(f, {.jobs = opts.jobs}).pres;
        int bad = 0;
        const int count = std::min(opts.samples, 50);
        for (int t = 0; t < count; ++t) {
            FuncTable phi = random_permutation(g, rng);
            if (pres_exact(compose_right(f, phi), {.jobs = opts.jobs}).pres != base) ++bad;
        }
        c.record("right-composition invariance on gf:" + std::to_string(q) + " (" +
                     std::to_string(count) + " samples)",
                 bad == 0);
    }
    return c.results;
}

std::vector<CheckResult> suite_thm33(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    for (int q : {7, 9}) {
        GroupPtr g = q == 9 ? make_field(3, 2) : make_field(q, 1);
        FuncTable f = monomial(g, 2);
        const int base = pres_exact(f, {.jobs = opts.jobs}).pres;
        int bad = 0;
        const int count = std::min(opts.samples, 50);
        for (int t = 0; t < count; ++t) {
            const AffineMap a1 = random_affine_permutation(g, rng);
            const AffineMap a2 = random_affine_permutation(g, rng);
            if (pres_exact(affine_transform(f, a1, a2), {.jobs = opts.jobs}).pres != base) {
                ++bad;
            }
        }
        c.record("affine invariance on gf:" + std::to_string(q) + " (" +
                     std::to_string(count) + " samples)",
                 bad == 0);
    }
    return c.results;
}

std::vector<CheckResult> suite_thm41(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    GroupPtr g = opts.field_spec.empty() ? make_field(7, 1) : parse_group_spec(opts.field_spec);
    int bad = 0;
    const int count = std::max(1, opts.samples);
    for (int t = 0; t < count; ++t) {
        FuncTable f = random_func(g, rng);
        FuncTable h = random_func(g, rng);
        const std::int64_t vg = image_size(h);
        const std::int64_t lhs = differential_uniformity(add_func(h, f), opts.jobs);
        const std::int64_t rhs = differential_uniformity(f, opts.jobs) * (vg * vg - vg + 1);
        if (lhs > rhs) ++bad;
    }
    c.record("composite uniformity bound on " + g->spec() + " (" + std::to_string(count) +
                 " pairs)",
             bad == 0);
    return c.results;
}

std::vector<CheckResult> suite_thm45(const VerifyOptions& opts) {
    Checker c;
    for (int q : {7, 9, 11, 13}) {
        GroupPtr g = q == 9 ? make_field(3, 2) : make_field(q, 1);
        FuncTable f = monomial(g, 2);
        const bool planar = is_planar(f, opts.jobs);
        const std::optional<int> d = d_to_one_on_nonzero(f);
        const int pres = pres_exact(f, {.jobs = opts.jobs}).pres;
        c.record("two-to-one planar square map over order " + std::to_string(q),
                 planar && d == 2 && pres > 2, "pres=" + std::to_string(pres));
    }
    return c.results;
}

std::vector<CheckResult> suite_lemma42(const VerifyOptions& opts) {
    Checker c;
    for (int q : {3, 5, 7, 9, 11, 13}) {
        GroupPtr g = q == 9 ? make_field(3, 2) : make_field(q, 1);
        FuncTable f = monomial(g, 2);
        if (!is_planar(f, opts.jobs)) {
            c.record("square map planarity over order " + std::to_string(q), false);
            continue;
        }
        const int pres = pres_exact(f, {.jobs = opts.jobs}).pres;
        c.record("planar pres cap over order " + std::to_string(q), 2 * pres <= q + 1,
                 "pres=" + std::to_string(pres));
    }
    return c.results;
}

std::vector<CheckResult> suite_lemma44(const VerifyOptions& opts) {
    Checker c;
    std::vector<int> ps = opts.p_list;
    if (ps.empty()) ps = {7, 11};
    for (int p : ps) {
        const FamilyPrediction pred = gen_quadratic_character(p);
        const std::optional<int> d = d_to_one_on_nonzero(pred.f);
        const PresCertificate cert = pres_exact(pred.f, {.jobs = opts.jobs});
        if (!d || cert.pres != *d) {
            c.record("shift-difference condition gf:" + std::to_string(p), p % 4 == 1,
                     "not a pres = u = d instance");
            continue;
        }
        const bool ok = shift_difference_condition(pred.f, cert.witness_shifts);
        c.record("shift-difference condition gf:" + std::to_string(p), ok);
    }
    return c.results;
}

std::vector<CheckResult> suite_thm51(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    for (const GroupPtr& g : group_pool(opts.q_max)) {
        const int per_group = std::max(1, opts.samples / 8);
        int bad = 0;
        std::string note;
        for (int t = 0; t < per_group; ++t) {
            FuncTable f = random_func(g, rng);
            const PreimageDistribution dist = preimage_distribution(f);
            bool ok = true;
            try {
                const M0Report rep = m0_from_ns(f);  // asserts the identity itself
                for (const M0Truncation& tr : rep.truncations) {
                    if (tr.cutoff % 2 == 0 && tr.partial < rep.m0) ok = false;
                    if (tr.cutoff % 2 == 1 && tr.partial > rep.m0) ok = false;
                }
            } catch (const InternalError& e) {
                ok = false;
                note = e.what();
            }
            const mpz_class n2 = n_s(dist, 2);
            if (mpz_class(dist.image_size) * 2 < mpz_class(f.size()) * 2 - n2) ok = false;
            if (!ok) ++bad;
        }
        c.record("alternating-sum identity on " + g->spec() + " (" +
                     std::to_string(per_group) + " samples)",
                 bad == 0, note);
    }
    return c.results;
}

std::vector<CheckResult> suite_identities(const VerifyOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed);
    for (const GroupPtr& g : group_pool(std::min(opts.q_max, 16))) {
        const int per_group = std::max(1, opts.samples / 8);
        int bad = 0;
        for (int t = 0; t < per_group; ++t) {
            FuncTable f = random_func(g, rng);
            bool ok = imbalance(f) == n_s(f, 2);
            const std::int64_t nbb = derivative_imbalance(f, opts.jobs);
            const AmbiguityReport amb = ambiguity(f, opts.jobs);
            ok = ok && 2 * amb.a == nbb;
            std::int64_t rows = 0;
            for (int a = 1; a < f.size(); ++a) {
                const mpz_class n2 = n_s(difference_operator(f, static_cast<code_t>(a)), 2);
                if (mpz_class(amb.rows[a - 1]) * 2 != n2) ok = false;
                rows += amb.rows[a - 1];
            }
            ok = ok && rows == amb.a;
            ok = ok && generating_poly_eval(f, 1) == f.size();
            if (!ok) ++bad;
        }
        c.record("imbalance and ambiguity identities on " + g->spec() + " (" +
                     std::to_string(per_group) + " samples)",
                 bad == 0);
    }
    return c.results;
}

} // namespace

const std::map<std::string, VerifySuite>& verify_suites() {
    static const std::map<std::string, VerifySuite> suites = [] {
        std::map<std::string, VerifySuite> m;
        m["thm2.1"] = suite_thm21;
        m["thm2.2"] = suite_thm22;
        m["thm2.3"] = suite_thm23;
        m["thm2.4"] = suite_eq5;
        m["eq5"] = suite_eq5;
        m["cor3.2"] = suite_cor32;
        m["thm3.3"] = suite_thm33;
        m["thm4.1"] = suite_thm41;
        m["thm4.5"] = suite_thm45;
        m["lemma4.2"] = suite_lemma42;
        m["lemma4.4"] = suite_lemma44;
        m["thm5.1"] = suite_thm51;
        m["identities"] = suite_identities;
        return m;
    }();
    return suites;
}

std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "all") {
        std::vector<CheckResult> all;
        for (const auto& [key, suite] : verify_suites()) {
            if (key == "eq5") continue;  // alias of thm2.4
            std::vector<CheckResult> r = suite(opts);
            for (CheckResult& cr : r) cr.name = key + ": " + cr.name;
            all.insert(all.end(), r.begin(), r.end());
        }
        return all;
    }
    const auto it = verify_suites().find(name);
    if (it == verify_suites().end()) throw ParseError("unknown verify suite: " + name);
    return it->second(opts);
}

} // namespace pres
