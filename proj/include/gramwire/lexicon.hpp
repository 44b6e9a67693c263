#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gramwire/diagram.hpp"
#include "gramwire/rewrite.hpp"
#include "gramwire/types.hpp"

namespace gramwire {

enum class WordClass {
    Noun,
    Determiner,
    Adjective,
    IntransitiveVerb,
    TransitiveVerb,
    DitransitiveVerb,
    PredicativeAdverb,
    AttributiveAdverb,
    SubjectRelativePronoun,
    ObjectRelativePronoun,
    PassiveMarker,
    PossessiveMarker,
    PossessiveRelativePronoun,
};

/// Tag used in lexicon files, e.g. "tv", "relpron-obj".
char const* to_string(WordClass c);
std::optional<WordClass> word_class_from_string(std::string_view tag);
std::vector<WordClass> all_word_classes();

/// Content words keep a labeled box in their wiring.
bool is_content_word(WordClass c);

/// Default pregroup type of a class. Sentence types of verbs are wrapped
/// noun bundles, one component per argument: [subject, objects...].
/// Sentence-taking words use the sentence slot `s`, which takes the shape
/// of whatever bundle it links with.
PregroupType type_template(WordClass c);

struct LexiconEntry {
    std::vector<std::string> surface;  ///< tokens; "_" is a participle gap
    WordClass word_class = WordClass::Noun;
    std::string lemma;
    PregroupType type;
    bool type_overridden = false;
    std::size_t line = 0;

    std::string surface_text() const;
};

/// Result of matching lexicon surfaces at one token position.
struct LexiconMatch {
    LexiconEntry const* entry = nullptr;
    std::size_t length = 0;
    std::string gap_lemma;  ///< lemma of the participle filling "_", if any
};

class Lexicon {
public:
    Lexicon() = default;
    Lexicon(Lexicon&& other) noexcept : entries_(std::move(other.entries_)) {}
    Lexicon& operator=(Lexicon&& other) noexcept {
        entries_ = std::move(other.entries_);
        cache_.clear();
        return *this;
    }

    /// Parses the tab-separated lexicon format. Throws `LexiconError`.
    static Lexicon parse(std::string_view text);
    static Lexicon load(std::string const& path);

    std::vector<LexiconEntry> const& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Entries whose surface matches at `pos`, longest match only. Several
    /// results mean the surface is ambiguous between classes.
    std::vector<LexiconMatch> match(std::vector<std::string> const& tokens, std::size_t pos) const;

    /// First entry with this surface text (and class, if given).
    LexiconEntry const* find(std::string const& surface, std::optional<WordClass> c = std::nullopt) const;

    std::vector<std::string> alphabet() const;

    /// Internal wiring of a derived class (possessives), composed once per
    /// port shape and cached.
    Diagram derived_wiring(LexiconEntry const& entry, std::vector<WireType> const& ports, Mode mode) const;

private:
    std::vector<LexiconEntry> entries_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::string, Diagram> cache_;
};

/// Internal wiring for an entry whose ports have the given (resolved) types.
/// The result's output boundary lists one port per entry port, with exactly
/// those types. `lemma` overrides the content label (passive participles).
/// Throws `Error` when the class has no wiring for these ports.
Diagram instantiate_wiring(LexiconEntry const& entry, std::vector<WireType> const& ports, Mode mode,
                           Lexicon const* lexicon = nullptr, std::string const& lemma = {});
/// Same, using the entry's own type (sentence slots default to the
/// two-argument sentence bundle).
Diagram instantiate_wiring(LexiconEntry const& entry, Mode mode, Lexicon const* lexicon = nullptr);

/// Composition behind the possessive entries: a hidden "own" relation
/// between possessor and possessed whose sentence is deleted.
Diagram derive_possessive_wiring(WordClass c, std::string const& own_lemma,
                                 std::vector<WireType> const& ports, Mode mode);

/// Replaces each word box by its wiring, port for port.
Diagram substitute_wirings(Diagram const& d, Lexicon const& lex, Mode mode);

}  // namespace gramwire
