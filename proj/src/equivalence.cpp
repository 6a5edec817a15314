#include "pres/equivalence.hpp"

#include <cctype>
#include <random>

namespace pres {

namespace {

void check_additive(const FuncTable& l) {
    const GroupTable& g = l.group();
    const int q = l.size();
    auto ok = [&](int x, int y) { return l(g.add(x, y)) == g.add(l(x), l(y)); };
    if (q <= 64) {
        for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y)
                if (!ok(x, y)) throw InvalidArgument("map is not additive");
    } else {
        std::mt19937 rng(0x5EED);
        std::uniform_int_distribution<int> pick(0, q - 1);
        for (int t = 0; t < 10000; ++t) {
            if (!ok(pick(rng), pick(rng))) throw InvalidArgument("map is not additive");
        }
    }
}

void require_permutation(const FuncTable& phi, const char* what) {
    if (!is_permutation(phi)) {
        throw InvalidArgument(std::string(what) + " must be a permutation");
    }
}

} // namespace

AffineMap make_affine(const FuncTable& t) {
    const GroupTable& g = t.group();
    const code_t c = t(0);
    std::vector<code_t> lv(t.size());
    for (int x = 0; x < t.size(); ++x) lv[x] = g.sub(t(x), c);
    FuncTable linear(t.group_ptr(), std::move(lv));
    check_additive(linear);
    return {std::move(linear), c};
}

AffineMap affine_from_poly(GroupPtr field, const Polynomial& p) {
    return make_affine(eval_poly(std::move(field), p));
}

AffineMap affine_identity(GroupPtr g) { return {identity_func(std::move(g)), 0}; }

bool is_permutation(const AffineMap& a) { return is_permutation(a.linear); }

FuncTable table_of(const AffineMap& a) {
    std::vector<code_t> v(a.linear.size());
    for (int x = 0; x < a.linear.size(); ++x) v[x] = a(x);
    return FuncTable(a.linear.group_ptr(), std::move(v));
}

FuncTable compose_right(const FuncTable& f, const FuncTable& phi) {
    require_same_group(f, phi);
    require_permutation(phi, "right factor");
    std::vector<code_t> v(f.size());
    for (int x = 0; x < f.size(); ++x) v[x] = f(phi(x));
    return FuncTable(f.group_ptr(), std::move(v));
}

FuncTable compose_left(const FuncTable& phi, const FuncTable& f) {
    require_same_group(f, phi);
    require_permutation(phi, "left factor");
    std::vector<code_t> v(f.size());
    for (int x = 0; x < f.size(); ++x) v[x] = phi(f(x));
    return FuncTable(f.group_ptr(), std::move(v));
}

FuncTable affine_transform(const FuncTable& f, const AffineMap& a1, const AffineMap& a2) {
    if (a1.linear.group_ptr() != f.group_ptr() || a2.linear.group_ptr() != f.group_ptr()) {
        throw InvalidArgument("maps must share the function's group");
    }
    if (!is_permutation(a1) || !is_permutation(a2)) {
        throw InvalidArgument("affine transform requires affine permutations");
    }
    std::vector<code_t> v(f.size());
    for (int x = 0; x < f.size(); ++x) v[x] = a1(f(a2(x)));
    return FuncTable(f.group_ptr(), std::move(v));
}

FuncTable ea_transform(const FuncTable& f, const AffineMap& a1, const AffineMap& a2,
                       const AffineMap& a3) {
    if (a1.linear.group_ptr() != f.group_ptr() || a2.linear.group_ptr() != f.group_ptr() ||
        a3.linear.group_ptr() != f.group_ptr()) {
        throw InvalidArgument("maps must share the function's group");
    }
    if (!is_permutation(a1) || !is_permutation(a2)) {
        throw InvalidArgument("EA transform requires A1, A2 to be permutations");
    }
    const GroupTable& g = f.group();
    std::vector<code_t> v(f.size());
    for (int x = 0; x < f.size(); ++x) v[x] = g.add(a2(f(a1(x))), a3(x));
    return FuncTable(f.group_ptr(), std::move(v));
}

FuncTable parse_cycles(GroupPtr g, std::string_view text) {
    const int q = g->order();
    std::vector<code_t> v(q);
    for (int x = 0; x < q; ++x) v[x] = static_cast<code_t>(x);
    std::vector<bool> used(q, false);

    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i >= text.size()) throw ParseError("empty cycle expression", i);

    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != '(') throw ParseError("expected '('", i);
        ++i;

        std::vector<int> cycle;
        std::string digits;
        while (true) {
            skip_ws();
            if (i >= text.size()) throw ParseError("unterminated cycle", i);
            const char ch = text[i];
            if (ch == ')') {
                ++i;
                break;
            }
            if (ch == ',') {
                ++i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(ch))) {
                throw ParseError("expected a point, ',' or ')'", i);
            }
            const std::size_t start = i;
            long val = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                val = val * 10 + (text[i] - '0');
                if (val > 65535) throw ParseError("point out of range", start);
                ++i;
            }
            cycle.push_back(static_cast<int>(val));
            digits += text.substr(start, i - start);
        }

        // A lone multi-digit token like (2345) is read digit-by-digit when
        // the group is small enough for that to be the only sensible reading.
        if (cycle.size() == 1 && cycle[0] >= q && q <= 10) {
            cycle.clear();
            for (char d : digits) cycle.push_back(d - '0');
        }

        for (int pt : cycle) {
            if (pt >= q) throw ParseError("point " + std::to_string(pt) + " out of range", i);
            if (used[pt]) throw ParseError("point " + std::to_string(pt) + " repeated", i);
            used[pt] = true;
        }
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            v[cycle[j]] = static_cast<code_t>(cycle[(j + 1) % cycle.size()]);
        }
        skip_ws();
    }
    return FuncTable(std::move(g), std::move(v));
}

} // namespace pres
