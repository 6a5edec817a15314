#include "pres/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace pres {

namespace {

void check_order_limit(long long q, int order_limit) {
    if (order_limit > GroupTable::hard_order_limit) order_limit = GroupTable::hard_order_limit;
    if (q > order_limit) {
        throw InvalidArgument("group order " + std::to_string(q) + " exceeds limit " +
                              std::to_string(order_limit));
    }
}

// Dense polynomial arithmetic over F_p, ascending coefficients.
using FpPoly = std::vector<int>;

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
    }
    return r;
}

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a by monic divisor d.
FpPoly fp_mod(FpPoly a, const FpPoly& d, int p) {
    fp_trim(a);
    const int dd = static_cast<int>(d.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dd) {
        const int shift = static_cast<int>(a.size()) - 1 - dd;
        const int c = a.back();
        if (c != 0) {
            for (int i = 0; i <= dd; ++i) {
                a[shift + i] = ((a[shift + i] - c * d[i]) % p + p * p) % p;
            }
        }
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

int fp_eval(const FpPoly& a, int x, int p) {
    int r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = (r * x + *it) % p;
    return r;
}

std::vector<int> decode_digits(int code, int base, int len) {
    std::vector<int> d(len);
    for (int i = 0; i < len; ++i) {
        d[i] = code % base;
        code /= base;
    }
    return d;
}

} // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible(const std::vector<int>& poly, int p) {
    const int e = static_cast<int>(poly.size()) - 1;
    if (e < 1 || poly.back() % p != 1) return false;
    for (int x = 0; x < p; ++x) {
        if (fp_eval(poly, x, p) == 0) return false;
    }
    if (e <= 3) return true;  // no roots rules out all factorizations
    // Trial division by every monic polynomial of degree 2..e/2.
    for (int d = 2; d <= e / 2; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long c = 0; c < count; ++c) {
            FpPoly div = decode_digits(static_cast<int>(c), p, d);
            div.push_back(1);
            FpPoly rem = fp_mod(poly, div, p);
            if (rem.empty()) return false;
        }
    }
    return true;
}

std::vector<int> default_irreducible(int p, int e) {
    if (e == 1) return {0, 1};  // x
    // Smallest monic candidate in coefficient-value order.
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long c = 1; c < count; ++c) {
        std::vector<int> cand = decode_digits(static_cast<int>(c), p, e);
        cand.push_back(1);
        if (is_irreducible(cand, p)) return cand;
    }
    throw InternalError("no irreducible polynomial found for p=" + std::to_string(p) +
                        " e=" + std::to_string(e));
}

GroupPtr make_field(int p, int e, std::optional<std::vector<int>> irreducible, int order_limit) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic must be prime, got " +
                                            std::to_string(p));
    if (e < 1) throw InvalidArgument("field degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > GroupTable::hard_order_limit) {
            throw InvalidArgument("field order overflows the element encoding");
        }
    }
    check_order_limit(q, order_limit);

    std::vector<int> mod;
    if (irreducible) {
        mod = *irreducible;
        if (static_cast<int>(mod.size()) != e + 1) {
            throw InvalidArgument("irreducible polynomial must have degree " + std::to_string(e));
        }
        for (int& c : mod) c = ((c % p) + p) % p;
        if (mod.back() != 1) throw InvalidArgument("irreducible polynomial must be monic");
        if (e > 12) throw InvalidArgument("irreducibility checking supported up to degree 12");
        if (!is_irreducible(mod, p)) throw InvalidArgument("supplied polynomial is reducible");
    } else {
        mod = default_irreducible(p, e);
    }

    auto g = std::shared_ptr<GroupTable>(new GroupTable());
    const int n = static_cast<int>(q);
    g->q_ = n;
    g->kind_ = GroupKind::Field;
    g->abelian_ = true;
    g->p_ = p;
    g->e_ = e;
    g->modulus_ = mod;

    // Digit-wise addition and negation.
    g->add_.resize(static_cast<std::size_t>(n) * n);
    g->neg_.resize(n);
    std::vector<int> pw(e + 1, 1);
    for (int i = 1; i <= e; ++i) pw[i] = pw[i - 1] * p;
    for (int a = 0; a < n; ++a) {
        int negc = 0;
        for (int i = 0; i < e; ++i) {
            const int da = (a / pw[i]) % p;
            negc += ((p - da) % p) * pw[i];
        }
        g->neg_[a] = static_cast<code_t>(negc);
        for (int b = 0; b < n; ++b) {
            int s = 0;
            for (int i = 0; i < e; ++i) {
                const int da = (a / pw[i]) % p;
                const int db = (b / pw[i]) % p;
                s += ((da + db) % p) * pw[i];
            }
            g->add_[static_cast<std::size_t>(a) * n + b] = static_cast<code_t>(s);
        }
    }

    // Multiplication through log/exp tables over a generator.
    auto mul_raw = [&](int a, int b) -> int {
        FpPoly pa = decode_digits(a, p, e);
        FpPoly pb = decode_digits(b, p, e);
        FpPoly r = fp_mod(fp_mul(pa, pb, p), mod, p);
        int code = 0;
        for (std::size_t i = 0; i < r.size(); ++i) code += r[i] * pw[i];
        return code;
    };
    const int group_order = n - 1;
    int gen = 0;
    for (int c = 1; c < n; ++c) {
        int x = c, ord = 1;
        while (x != 1) {
            x = mul_raw(x, c);
            ++ord;
        }
        if (ord == group_order) {
            gen = c;
            break;
        }
    }
    if (gen == 0) throw InternalError("no multiplicative generator found");
    g->gen_ = static_cast<code_t>(gen);
    g->exp_.resize(group_order);
    g->log_.assign(n, -1);
    int x = 1;
    for (int i = 0; i < group_order; ++i) {
        g->exp_[i] = static_cast<code_t>(x);
        g->log_[x] = i;
        x = mul_raw(x, gen);
    }
    if (x != 1) throw InternalError("generator order mismatch");
    return g;
}

GroupPtr make_cyclic_product(const std::vector<int>& factors, int order_limit) {
    if (factors.empty()) throw InvalidArgument("cyclic product needs at least one factor");
    long long q = 1;
    for (int f : factors) {
        if (f < 2) throw InvalidArgument("cyclic factors must be >= 2");
        q *= f;
        if (q > GroupTable::hard_order_limit) {
            throw InvalidArgument("group order overflows the element encoding");
        }
    }
    check_order_limit(q, order_limit);

    auto g = std::shared_ptr<GroupTable>(new GroupTable());
    const int n = static_cast<int>(q);
    g->q_ = n;
    g->kind_ = GroupKind::CyclicProduct;
    g->abelian_ = true;
    g->factors_ = factors;
    g->add_.resize(static_cast<std::size_t>(n) * n);
    g->neg_.resize(n);
    for (int a = 0; a < n; ++a) {
        int rest = a, negc = 0, scale = 1;
        for (int f : factors) {
            const int da = rest % f;
            rest /= f;
            negc += ((f - da) % f) * scale;
            scale *= f;
        }
        g->neg_[a] = static_cast<code_t>(negc);
        for (int b = 0; b < n; ++b) {
            int ra = a, rb = b, s = 0, sc = 1;
            for (int f : factors) {
                s += ((ra % f + rb % f) % f) * sc;
                ra /= f;
                rb /= f;
                sc *= f;
            }
            g->add_[static_cast<std::size_t>(a) * n + b] = static_cast<code_t>(s);
        }
    }
    return g;
}

GroupPtr make_cayley(const std::vector<std::vector<int>>& table, std::string origin,
                     int order_limit) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw InvalidArgument("empty Cayley table");
    check_order_limit(n, order_limit);

    auto g = std::shared_ptr<GroupTable>(new GroupTable());
    g->q_ = n;
    g->kind_ = GroupKind::Cayley;
    g->origin_ = std::move(origin);
    g->add_.resize(static_cast<std::size_t>(n) * n);

    std::vector<bool> seen(n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n) {
            throw InvalidArgument("Cayley table is not square");
        }
        std::fill(seen.begin(), seen.end(), false);
        for (int b = 0; b < n; ++b) {
            const int v = table[a][b];
            if (v < 0 || v >= n) throw InvalidArgument("Cayley entry out of range");
            if (seen[v]) throw InvalidArgument("Cayley row is not a permutation");
            seen[v] = true;
            g->add_[static_cast<std::size_t>(a) * n + b] = static_cast<code_t>(v);
        }
    }
    for (int b = 0; b < n; ++b) {
        std::fill(seen.begin(), seen.end(), false);
        for (int a = 0; a < n; ++a) {
            const int v = g->add(a, b);
            if (seen[v]) throw InvalidArgument("Cayley column is not a permutation");
            seen[v] = true;
        }
    }
    for (int a = 0; a < n; ++a) {
        if (g->add(0, a) != a || g->add(a, 0) != a) {
            throw InvalidArgument("element 0 must be a two-sided identity");
        }
    }

    auto assoc = [&](int a, int b, int c) {
        return g->add(g->add(a, b), c) == g->add(a, g->add(b, c));
    };
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!assoc(a, b, c)) throw InvalidArgument("Cayley table is not associative");
    } else {
        std::mt19937 rng(0xC0FFEE);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < 10000; ++t) {
            if (!assoc(pick(rng), pick(rng), pick(rng))) {
                throw InvalidArgument("Cayley table is not associative");
            }
        }
    }

    g->neg_.resize(n);
    for (int a = 0; a < n; ++a) {
        int inv = -1;
        for (int b = 0; b < n; ++b) {
            if (g->add(a, b) == 0) {
                inv = b;
                break;
            }
        }
        if (inv < 0 || g->add(inv, a) != 0) {
            throw InvalidArgument("Cayley table lacks two-sided inverses");
        }
        g->neg_[a] = static_cast<code_t>(inv);
    }

    g->abelian_ = true;
    for (int a = 0; a < n && g->abelian_; ++a)
        for (int b = a + 1; b < n; ++b)
            if (g->add(a, b) != g->add(b, a)) {
                g->abelian_ = false;
                break;
            }
    return g;
}

code_t GroupTable::mul(int a, int b) const {
    if (!is_field()) throw InvalidArgument("multiplication requires a field group");
    if (a == 0 || b == 0) return 0;
    const int m = q_ - 1;
    return exp_[(log_[a] + log_[b]) % m];
}

code_t GroupTable::pow(int a, std::uint64_t k) const {
    if (!is_field()) throw InvalidArgument("exponentiation requires a field group");
    if (k == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t m = q_ - 1;
    return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (k % m)) % m)];
}

code_t GroupTable::generator() const {
    if (!is_field()) throw InvalidArgument("generator requires a field group");
    return gen_;
}

int GroupTable::characteristic() const {
    if (!is_field()) throw InvalidArgument("characteristic requires a field group");
    return p_;
}

int GroupTable::degree() const {
    if (!is_field()) throw InvalidArgument("degree requires a field group");
    return e_;
}

const std::vector<int>& GroupTable::modulus() const {
    if (!is_field()) throw InvalidArgument("modulus requires a field group");
    return modulus_;
}

const std::vector<int>& GroupTable::factors() const {
    if (kind_ != GroupKind::CyclicProduct) {
        throw InvalidArgument("factors requires a cyclic-product group");
    }
    return factors_;
}

std::string GroupTable::spec() const {
    switch (kind_) {
        case GroupKind::Field: {
            std::string s = "gf:" + std::to_string(p_);
            if (e_ > 1) {
                s += "^" + std::to_string(e_) + ":";
                for (std::size_t i = 0; i < modulus_.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(modulus_[i]);
                }
            }
            return s;
        }
        case GroupKind::CyclicProduct: {
            std::string s = "zn:";
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                if (i) s += "x";
                s += std::to_string(factors_[i]);
            }
            return s;
        }
        case GroupKind::Cayley:
            return "cayley:" + (origin_.empty() ? std::string("?") : origin_);
    }
    return "?";
}

} // namespace pres
