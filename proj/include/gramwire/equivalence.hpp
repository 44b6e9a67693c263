#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gramwire/diagram.hpp"
#include "gramwire/lexicon.hpp"
#include "gramwire/pipeline.hpp"
#include "gramwire/rewrite.hpp"

namespace gramwire {

/// A normalized diagram with its canonical serialization. Two normal forms
/// are the same construct iff their serializations are equal.
struct NormalForm {
    Diagram diagram;
    Mode mode = Mode::Commutative;
    std::string canonical;
    /// Diagram node id at each canonical position.
    std::vector<NodeId> canonical_order;

    /// FNV-1a of the canonical serialization, 16 hex digits.
    std::string hash() const;
};

/// Canonical serialization: color refinement on node descriptors, then
/// backtracking over the remaining ties, keeping the least serialization.
/// Boundary ports are pinned by position. Spider legs are unordered in the
/// commutative mode and cyclically ordered otherwise.
NormalForm canonicalize(Diagram const& d, Mode mode);

NormalForm normal_form(std::string const& sentence, Lexicon const& lex, PipelineOptions const& opts = {});

struct EquivalenceVerdict {
    bool equivalent = false;
    NormalForm first;
    NormalForm second;
    /// Empty when equivalent. Otherwise the first differing lines of the two
    /// serializations and the diagram nodes they mention.
    std::string witness;
};

EquivalenceVerdict compare(std::string const& s1, std::string const& s2, Lexicon const& lex,
                           PipelineOptions const& opts = {});
bool equivalent(std::string const& s1, std::string const& s2, Lexicon const& lex, PipelineOptions const& opts = {});

constexpr std::size_t kMaxIsomorphismNodes = 24;

/// Exact labeled-graph isomorphism by plain backtracking, independent of
/// `canonicalize`. Requires at most 24 nodes across both diagrams.
bool isomorphic(NormalForm const& a, NormalForm const& b);
bool isomorphic(Diagram const& a, Diagram const& b, Mode mode);

}  // namespace gramwire
