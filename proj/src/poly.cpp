#include "pres/poly.hpp"

#include <cctype>
#include <string>

namespace pres {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos); }
};

std::uint64_t parse_uint(Cursor& c, const char* what) {
    c.skip_ws();
    if (c.done() || !std::isdigit(static_cast<unsigned char>(c.peek()))) {
        c.fail(std::string("expected ") + what);
    }
    std::uint64_t v = 0;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + static_cast<std::uint64_t>(c.peek() - '0');
        if (v > 1000000000ULL) c.fail(std::string(what) + " too large");
        ++c.pos;
    }
    return v;
}

// coefficient := uint | 'g' ['^' uint]
code_t parse_coeff(Cursor& c, const GroupTable& field, std::optional<code_t> generator) {
    c.skip_ws();
    if (!c.done() && (c.peek() == 'g' || c.peek() == 'G')) {
        ++c.pos;
        if (!generator) {
            c.fail("'g' used without a declared generator over this field");
        }
        std::uint64_t j = 1;
        c.skip_ws();
        if (!c.done() && c.peek() == '^') {
            ++c.pos;
            j = parse_uint(c, "generator exponent");
        }
        return field.pow(*generator, j);
    }
    const std::uint64_t v = parse_uint(c, "coefficient");
    if (v >= static_cast<std::uint64_t>(field.characteristic())) {
        c.fail("coefficient out of range (must be below the characteristic)");
    }
    return static_cast<code_t>(v);
}

} // namespace

Polynomial parse_poly(std::string_view text, const GroupTable& field,
                      std::optional<code_t> generator) {
    if (!field.is_field()) throw InvalidArgument("polynomials require a field group");
    if (!generator && field.degree() > 1) generator = field.generator();

    Polynomial out;
    auto add_term = [&](std::uint32_t exp, code_t coeff) {
        const code_t merged = field.add(out.terms.count(exp) ? out.terms[exp] : code_t{0}, coeff);
        if (merged == 0) {
            out.terms.erase(exp);
        } else {
            out.terms[exp] = merged;
        }
    };

    Cursor c{text};
    c.skip_ws();
    if (c.done()) c.fail("empty polynomial");

    bool first = true;
    while (true) {
        c.skip_ws();
        bool negate = false;
        if (!c.done() && (c.peek() == '+' || c.peek() == '-')) {
            negate = c.peek() == '-';
            ++c.pos;
        } else if (!first) {
            if (c.done()) break;
            c.fail("expected '+' or '-' between terms");
        }
        first = false;
        c.skip_ws();
        if (c.done()) c.fail("expected a term");

        code_t coeff = 1;
        bool have_x = false;
        std::uint64_t exp = 0;

        const char ch = c.peek();
        if (ch == 'x' || ch == 'X') {
            have_x = true;
            ++c.pos;
        } else {
            coeff = parse_coeff(c, field, generator);
            c.skip_ws();
            if (!c.done() && c.peek() == '*') {
                ++c.pos;
                c.skip_ws();
                if (c.done() || (c.peek() != 'x' && c.peek() != 'X')) c.fail("expected 'x'");
                ++c.pos;
                have_x = true;
            }
        }
        if (have_x) {
            exp = 1;
            c.skip_ws();
            if (!c.done() && c.peek() == '^') {
                ++c.pos;
                exp = parse_uint(c, "exponent");
            }
        }
        if (negate) coeff = field.neg(coeff);
        if (coeff != 0) add_term(static_cast<std::uint32_t>(exp), coeff);

        c.skip_ws();
        if (c.done()) break;
        if (c.peek() != '+' && c.peek() != '-') c.fail("unexpected character");
    }
    return out;
}

FuncTable eval_poly(GroupPtr field, const Polynomial& f) {
    if (!field->is_field()) throw InvalidArgument("polynomials require a field group");
    const GroupTable& g = *field;
    const int q = g.order();
    std::vector<code_t> values(q, 0);
    for (int x = 0; x < q; ++x) {
        code_t acc = 0;
        for (const auto& [exp, coeff] : f.terms) {
            acc = g.add(acc, g.mul(coeff, g.pow(x, exp)));
        }
        values[x] = acc;
    }
    return FuncTable(std::move(field), std::move(values));
}

Polynomial reduce_exponents(const Polynomial& f, const GroupTable& field) {
    if (!field.is_field()) throw InvalidArgument("polynomials require a field group");
    const std::uint32_t q = static_cast<std::uint32_t>(field.order());
    Polynomial out;
    for (const auto& [exp, coeff] : f.terms) {
        std::uint32_t e = exp;
        if (e >= q) e = (e - 1) % (q - 1) + 1;  // x^q = x as functions
        const code_t merged =
            field.add(out.terms.count(e) ? out.terms[e] : code_t{0}, coeff);
        if (merged == 0) {
            out.terms.erase(e);
        } else {
            out.terms[e] = merged;
        }
    }
    return out;
}

std::string poly_to_string(const Polynomial& f, const GroupTable& field) {
    if (f.terms.empty()) return "0";
    std::string s;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto [exp, coeff] = *it;
        if (!s.empty()) s += " + ";
        std::string cs;
        if (field.degree() == 1 || coeff < field.characteristic()) {
            cs = std::to_string(coeff);
        } else {
            // nonprime coefficient as a generator power
            std::uint64_t j = 0;
            code_t v = 1;
            while (v != coeff) {
                v = field.mul(v, field.generator());
                ++j;
            }
            cs = "g^" + std::to_string(j);
        }
        if (exp == 0) {
            s += cs;
        } else {
            if (coeff != 1) s += cs + "*";
            s += "x";
            if (exp != 1) s += "^" + std::to_string(exp);
        }
    }
    return s;
}

} // namespace pres
