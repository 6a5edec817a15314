#pragma once

#include <string_view>

#include "pres/func.hpp"
#include "pres/poly.hpp"

namespace pres {

// x -> L(x) + c with L verified additive (exhaustively for q <= 64, on
// 10^4 random pairs above).
struct AffineMap {
    FuncTable linear;
    code_t constant = 0;

    code_t operator()(int x) const {
        return linear.group().add(linear(x), constant);
    }
};

// Splits a table into constant part t(0) and additive part t - t(0);
// throws if the additive part is not additive.
AffineMap make_affine(const FuncTable& t);

AffineMap affine_from_poly(GroupPtr field, const Polynomial& p);
AffineMap affine_identity(GroupPtr g);

bool is_permutation(const AffineMap& a);
FuncTable table_of(const AffineMap& a);

// f o phi; phi must be a permutation.
FuncTable compose_right(const FuncTable& f, const FuncTable& phi);

// phi o f; phi must be a permutation.
FuncTable compose_left(const FuncTable& phi, const FuncTable& f);

// A1 o f o A2; both maps must be affine permutations.
FuncTable affine_transform(const FuncTable& f, const AffineMap& a1, const AffineMap& a2);

// A2 o f o A1 + A3; A1, A2 affine permutations, A3 any affine map.
FuncTable ea_transform(const FuncTable& f, const AffineMap& a1, const AffineMap& a2,
                       const AffineMap& a3);

// Cycle notation -> permutation table. Grammar: `(a b c)(d)` with whitespace
// or comma separators; unlisted points are fixed. A separator-free group of
// digits like `(2345)` is read digit-by-digit when q <= 10.
FuncTable parse_cycles(GroupPtr g, std::string_view text);

} // namespace pres
