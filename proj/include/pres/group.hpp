#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pres/errors.hpp"

namespace pres {

// Element code. Elements of a group of order q are encoded 0..q-1 with 0 the
// identity. Fields use base-p digit vectors (least significant digit =
// constant term of the polynomial basis); cyclic products use mixed radix
// with the first factor least significant.
using code_t = std::uint16_t;

enum class GroupKind { CyclicProduct, Field, Cayley };

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

// A finite group of order q with an explicit addition table, plus field
// multiplication (via log/exp tables) when constructed as GF(p^e).
// Immutable after construction; safe to share across threads.
class GroupTable {
public:
    static constexpr int default_order_limit = 4096;
    static constexpr int hard_order_limit = 65535;

    int order() const { return q_; }
    GroupKind kind() const { return kind_; }
    bool is_abelian() const { return abelian_; }
    bool is_field() const { return kind_ == GroupKind::Field; }

    code_t add(int a, int b) const {
        return add_[static_cast<std::size_t>(a) * q_ + b];
    }
    code_t neg(int a) const { return neg_[a]; }
    code_t sub(int a, int b) const { return add(a, neg(b)); }

    // Field multiplication; the nonzero codes form a cyclic group of order q-1.
    code_t mul(int a, int b) const;
    code_t pow(int a, std::uint64_t k) const;
    // Smallest-coded multiplicative generator of the field.
    code_t generator() const;

    int characteristic() const;            // field: p
    int degree() const;                    // field: e
    const std::vector<int>& modulus() const;  // field: irreducible, constant first, monic
    const std::vector<int>& factors() const;  // cyclic product: factor list

    // Canonical group spec string (round-trips through parse_group_spec).
    std::string spec() const;

    friend GroupPtr make_field(int p, int e, std::optional<std::vector<int>> irreducible,
                               int order_limit);
    friend GroupPtr make_cyclic_product(const std::vector<int>& factors, int order_limit);
    friend GroupPtr make_cayley(const std::vector<std::vector<int>>& table, std::string origin,
                                int order_limit);

private:
    GroupTable() = default;

    int q_ = 0;
    GroupKind kind_ = GroupKind::CyclicProduct;
    bool abelian_ = true;

    std::vector<code_t> add_;   // q*q, row-major
    std::vector<code_t> neg_;   // q

    // field data
    int p_ = 0;
    int e_ = 0;
    std::vector<int> modulus_;  // e+1 coefficients, constant first
    std::vector<code_t> exp_;   // exp_[i] = gen^i, i in 0..q-2
    std::vector<int> log_;      // log_[exp_[i]] = i; log_[0] = -1
    code_t gen_ = 0;

    // cyclic product data
    std::vector<int> factors_;

    // cayley data
    std::string origin_;
};

// Builds GF(p^e). When no irreducible polynomial is supplied the built-in
// default (smallest monic irreducible in coefficient-value order) is used.
// Supplied polynomials are given constant-first, must be monic of degree e,
// and are verified irreducible.
GroupPtr make_field(int p, int e, std::optional<std::vector<int>> irreducible = std::nullopt,
                    int order_limit = GroupTable::default_order_limit);

// Direct product Z_{n1} x ... x Z_{nk} with mixed-radix encoding.
GroupPtr make_cyclic_product(const std::vector<int>& factors,
                             int order_limit = GroupTable::default_order_limit);

// Group from an explicit Cayley table (possibly nonabelian). Verified: rows
// and columns are permutations, 0 is a two-sided identity, inverses exist,
// associativity exhaustively for q <= 64 and on 10^4 random triples above.
GroupPtr make_cayley(const std::vector<std::vector<int>>& table, std::string origin = "",
                     int order_limit = GroupTable::default_order_limit);

bool is_prime(int n);

// Deterministic default irreducible polynomial of degree e over F_p
// (constant-first, monic): the first irreducible in coefficient-value order.
std::vector<int> default_irreducible(int p, int e);

// Trial check: no roots in F_p and no monic divisor of degree <= deg/2.
bool is_irreducible(const std::vector<int>& poly, int p);

} // namespace pres
