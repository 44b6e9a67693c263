#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gramwire/types.hpp"

namespace gramwire {

/// One cup between two positions of the unit sequence (`left < right`).
struct Link {
    std::size_t left = 0;
    std::size_t right = 0;
    auto operator<=>(Link const&) const = default;
};

/// A contraction linkage. `links` are sorted by `left`.
struct Reduction {
    std::vector<Link> links;
    std::vector<std::size_t> residual;
    bool operator==(Reduction const&) const = default;
};

struct TypedToken {
    std::string surface;
    PregroupType type;
};

struct TypedSentence {
    std::vector<TypedToken> tokens;

    /// Concatenation of every token's top-level atoms. Wraps stay opaque:
    /// a bundle occupies one position and can only be linked as a whole.
    std::vector<TypeAtom> units() const;
    /// Token index owning each unit position.
    std::vector<std::size_t> unit_owners() const;
};

struct ReductionOptions {
    /// Basic type standing for "a sentence". A simple atom on this base also
    /// links with a flat bundle whose leaves share one exponent, which is how
    /// sentence types decomposed into noun bundles meet sentence-taking
    /// words (relative pronouns, adverbs).
    std::string sentence_base = "s";
    /// Declared basic types; empty means "every base in the input plus
    /// `sentence_base`".
    std::vector<std::string> alphabet;
};

/// Exponent of a flat bundle whose leaves are all simple with one exponent.
std::optional<std::int64_t> sentence_bundle_exponent(TypeAtom const& t);

/// Unit-level contraction: atom contraction plus the sentence-slot rule.
bool units_contract(TypeAtom const& a, TypeAtom const& b, ReductionOptions const& opts = {});

/// True when a single residual unit counts as the target type.
bool is_target_unit(TypeAtom const& u, std::string const& target, ReductionOptions const& opts = {});

/// Interval dynamic program (O(m^3) time, O(m^2) space) with a leftmost
/// backtrace. Returns a reduction leaving exactly one unit of the target
/// type, or nothing. Throws `Error` for a target outside the alphabet.
std::optional<Reduction> reduce_to(TypedSentence const& s, std::string const& target,
                                   ReductionOptions const& opts = {});
std::optional<Reduction> reduce_units(std::vector<TypeAtom> const& units, std::string const& target,
                                      ReductionOptions const& opts = {});

bool is_grammatical(TypedSentence const& s, std::string const& target,
                    ReductionOptions const& opts = {});

/// Exhaustive enumeration of every valid linkage; exponential, so inputs
/// are limited to 16 units. Results are ordered lexicographically by
/// (residual, links).
std::vector<Reduction> enumerate_reductions(std::vector<TypeAtom> const& units,
                                            std::string const& target,
                                            ReductionOptions const& opts = {});

constexpr std::size_t kMaxEnumerationLength = 16;

/// Checks every invariant of a reduction against its unit sequence.
/// Empty result means valid. An empty `target` skips the residual type check.
std::vector<std::string> validate_reduction(std::vector<TypeAtom> const& units, Reduction const& r,
                                            std::string const& target,
                                            ReductionOptions const& opts = {});

/// Text form "(0,1) (3,4)".
std::string links_to_string(Reduction const& r);

}  // namespace gramwire
