#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gramwire {

/// A basic type with an adjoint exponent.
///
/// Exponent 0 is the plain basic type. Contraction is always written
/// `(a, z) (a, z + 1) -> 1`, so the left-cancelling inverse of `n` (the one
/// that cancels against an `n` on its left) has exponent +1 and the
/// right-cancelling one has exponent -1. Traditional notation calls the +1
/// case a "left inverse" even though it sits to the right of what it cancels;
/// the exponent is the only thing the code relies on.
struct SimpleType {
    std::string base;
    std::int64_t exponent = 0;

    auto operator<=>(SimpleType const&) const = default;
};

/// Either a simple type or a bracketed list of atoms (a wrap bundle).
/// Diagram wires use the same shape, see `WireType`.
struct TypeAtom {
    bool wrapped = false;
    SimpleType simple;
    std::vector<TypeAtom> parts;

    TypeAtom() = default;
    TypeAtom(SimpleType s) : simple(std::move(s)) {}
    TypeAtom(std::string base, std::int64_t exponent) : simple{std::move(base), exponent} {}

    static TypeAtom wrap(std::vector<TypeAtom> parts);

    bool is_simple() const { return !wrapped; }
    bool is_wrap() const { return wrapped; }

    bool operator==(TypeAtom const& other) const;
    bool operator<(TypeAtom const& other) const;
};

using WireType = TypeAtom;

/// A string of atoms; the empty string is the unit type.
struct PregroupType {
    std::vector<TypeAtom> atoms;

    bool empty() const { return atoms.empty(); }
    bool operator==(PregroupType const&) const = default;
};

TypeAtom left_adjoint(TypeAtom const& t);
TypeAtom right_adjoint(TypeAtom const& t);
PregroupType left_adjoint(PregroupType const& t);
PregroupType right_adjoint(PregroupType const& t);

/// True iff `a b -> 1`: same base and `b.exponent == a.exponent + 1`.
bool contracts(SimpleType const& a, SimpleType const& b);

/// Atom-level contraction. Simple atoms follow `contracts`; a wrap contracts
/// only with its exact right adjoint (component links nested in reverse).
bool contracts(TypeAtom const& a, TypeAtom const& b);

/// All simple types in left-to-right order, wraps dropped.
std::vector<SimpleType> flatten(PregroupType const& t);
std::vector<SimpleType> flatten(TypeAtom const& t);

/// Number of simple leaves in an atom.
std::size_t leaf_count(TypeAtom const& t);

/// True when both atoms have the same tree of bases, ignoring exponents and
/// allowing the reversal introduced by an odd number of adjoints.
bool same_shape(TypeAtom const& a, TypeAtom const& b);

/// Same tree with every exponent set to 0 (the spider carrier of a leg).
TypeAtom strip_exponents(TypeAtom const& t);

/// Parses the textual syntax: atoms separated by single spaces,
/// `base`, `base^int` or `[atoms]`. Throws `SyntaxError` with a byte offset.
PregroupType parse_type(std::string_view text);
TypeAtom parse_atom(std::string_view text);

std::string to_string(PregroupType const& t);
std::string to_string(TypeAtom const& t);
std::string to_string(SimpleType const& t);

bool is_valid_base(std::string_view name);

}  // namespace gramwire
