#include "gramwire/pipeline.hpp"

#include <cctype>
#include <sstream>

#include "gramwire/error.hpp"

namespace gramwire {

std::vector<std::string> tokenize(std::string const& sentence) {
    std::vector<std::string> tokens;
    std::istringstream in(sentence);
    std::string tok;
    while (in >> tok) {
        for (auto& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        tokens.push_back(tok);
    }
    return tokens;
}

namespace {

constexpr std::size_t kMaxReadings = 1u << 14;

struct Word {
    std::string surface;
    std::vector<LexiconMatch> readings;
};

}  // namespace

ParsedSentence parse_sentence(std::string const& sentence, Lexicon const& lex, std::string const& target) {
    auto const tokens = tokenize(sentence);
    if (tokens.empty()) throw NotGrammaticalError("empty sentence");
    std::vector<Word> words;
    for (std::size_t pos = 0; pos < tokens.size();) {
        auto matches = lex.match(tokens, pos);
        if (matches.empty()) throw UnknownWordError(tokens[pos]);
        Word w;
        for (std::size_t k = 0; k < matches.front().length; ++k) {
            if (k) w.surface += ' ';
            w.surface += tokens[pos + k];
        }
        pos += matches.front().length;
        w.readings = std::move(matches);
        words.push_back(std::move(w));
    }

    ReductionOptions ropts;
    ropts.alphabet = lex.alphabet();
    std::vector<std::size_t> choice(words.size(), 0);
    for (std::size_t tried = 0; tried < kMaxReadings; ++tried) {
        TypedSentence typed;
        for (std::size_t i = 0; i < words.size(); ++i)
            typed.tokens.push_back({words[i].surface, words[i].readings[choice[i]].entry->type});
        if (auto r = reduce_to(typed, target, ropts)) {
            ParsedSentence p;
            p.typed = std::move(typed);
            p.reduction = std::move(*r);
            for (std::size_t i = 0; i < words.size(); ++i) {
                auto const& m = words[i].readings[choice[i]];
                p.entries.push_back(m.entry);
                p.lemmas.push_back(m.gap_lemma.empty() ? m.entry->lemma : m.gap_lemma);
            }
            return p;
        }
        // Next combination, last word varying fastest.
        std::size_t i = words.size();
        while (i > 0) {
            --i;
            if (++choice[i] < words[i].readings.size()) break;
            choice[i] = 0;
            if (i == 0) throw NotGrammaticalError("NOT GRAMMATICAL: '" + sentence + "' does not reduce to " + target);
        }
    }
    throw NotGrammaticalError("too many lexical readings for '" + sentence + "'");
}

char const* to_string(Stage stage) {
    switch (stage) {
        case Stage::Raw: return "raw";
        case Stage::Wired: return "wired";
        case Stage::Closed: return "closed";
        case Stage::Normal: return "normal";
    }
    return "?";
}

std::optional<Stage> stage_from_string(std::string const& text) {
    for (auto s : {Stage::Raw, Stage::Wired, Stage::Closed, Stage::Normal})
        if (text == to_string(s)) return s;
    return std::nullopt;
}

Diagram raw_diagram(ParsedSentence const& p, Lexicon const& lex) {
    ReductionOptions ropts;
    ropts.alphabet = lex.alphabet();
    std::vector<std::string> classes;
    for (auto const* e : p.entries) classes.emplace_back(to_string(e->word_class));
    return build_sentence_diagram(p.typed, p.reduction, ropts, classes, p.lemmas);
}

Diagram sentence_diagram(std::string const& sentence, Lexicon const& lex, Stage stage, PipelineOptions const& opts) {
    auto const parsed = parse_sentence(sentence, lex, opts.target);
    auto d = raw_diagram(parsed, lex);
    if (stage == Stage::Raw) return d;
    d = substitute_wirings(d, lex, opts.mode);
    if (stage == Stage::Wired) return d;
    d = close_outputs(std::move(d));
    if (stage == Stage::Closed) return d;
    return normalize(std::move(d), opts.mode);
}

}  // namespace gramwire
