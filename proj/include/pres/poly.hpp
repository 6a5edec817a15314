#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "pres/func.hpp"
#include "pres/group.hpp"

namespace pres {

// Sparse polynomial over a field: exponent -> nonzero coefficient code.
struct Polynomial {
    std::map<std::uint32_t, code_t> terms;

    bool operator==(const Polynomial&) const = default;
};

// Grammar: terms `c*x^k`, `c*x`, `x^k`, `x`, `c` joined by `+`/`-`; an
// optional leading sign. Coefficients are integers in [0, p), or `g^j`
// powers of the field generator over extension fields. Exponents are plain
// decimal integers.
//
// `generator` overrides the coefficient generator; by default extension
// fields use the field's canonical generator and prime fields have none
// (so `g` is rejected over a prime field).
Polynomial parse_poly(std::string_view text, const GroupTable& field,
                      std::optional<code_t> generator = std::nullopt);

// Evaluates f at every element of the field. Exponents of any size are
// handled (reduction x^q = x is implicit in field exponentiation).
FuncTable eval_poly(GroupPtr field, const Polynomial& f);

// Canonical form with every exponent below q, merging terms via the
// functional identity x^q = x.
Polynomial reduce_exponents(const Polynomial& f, const GroupTable& field);

std::string poly_to_string(const Polynomial& f, const GroupTable& field);

} // namespace pres
