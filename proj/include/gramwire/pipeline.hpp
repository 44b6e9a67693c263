#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gramwire/diagram.hpp"
#include "gramwire/lexicon.hpp"
#include "gramwire/reduction.hpp"
#include "gramwire/rewrite.hpp"

namespace gramwire {

/// Lowercases and splits on whitespace.
std::vector<std::string> tokenize(std::string const& sentence);

/// A sentence with one lexicon entry chosen per (multi-token) word.
struct ParsedSentence {
    TypedSentence typed;
    std::vector<LexiconEntry const*> entries;
    std::vector<std::string> lemmas;  ///< content lemma per word
    Reduction reduction;
};

/// Longest-match lookup, then the first combination of ambiguous entries
/// (in lexicon order) that reduces to `target`. Throws `UnknownWordError`
/// or `NotGrammaticalError`.
ParsedSentence parse_sentence(std::string const& sentence, Lexicon const& lex, std::string const& target = "s");

enum class Stage { Raw, Wired, Closed, Normal };

char const* to_string(Stage stage);
std::optional<Stage> stage_from_string(std::string const& text);

struct PipelineOptions {
    Mode mode = Mode::Commutative;
    std::string target = "s";
};

Diagram raw_diagram(ParsedSentence const& p, Lexicon const& lex);
Diagram sentence_diagram(std::string const& sentence, Lexicon const& lex, Stage stage,
                         PipelineOptions const& opts = {});

}  // namespace gramwire
