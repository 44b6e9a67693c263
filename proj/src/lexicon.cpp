#include "gramwire/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gramwire/error.hpp"

namespace gramwire {

namespace {

struct ClassInfo {
    WordClass c;
    char const* tag;
    char const* type;
    bool content;
};

constexpr ClassInfo kClasses[] = {
    {WordClass::Noun, "noun", "n", true},
    {WordClass::Determiner, "determiner", "n n^-1", false},
    {WordClass::Adjective, "adjective", "n n^-1", true},
    {WordClass::IntransitiveVerb, "iv", "n^1 [n]", true},
    {WordClass::TransitiveVerb, "tv", "n^1 [n n] n^-1", true},
    {WordClass::DitransitiveVerb, "dtv", "n^1 [n n n] n^-1 n^-1", true},
    {WordClass::PredicativeAdverb, "adv-pred", "s^1 s", true},
    {WordClass::AttributiveAdverb, "adv-attr", "n^1 s s^-1 n", true},
    {WordClass::SubjectRelativePronoun, "relpron-subj", "n^1 n s^-1 n", false},
    {WordClass::ObjectRelativePronoun, "relpron-obj", "n^1 n n^-2 s^-1", false},
    {WordClass::PassiveMarker, "passive-marker", "n^1 [n n] n^-1", false},
    {WordClass::PossessiveMarker, "possessive-marker", "n^1 n n^-1", false},
    {WordClass::PossessiveRelativePronoun, "relpron-poss", "n^1 n s^-1 n n^-1", false},
};

ClassInfo const& info(WordClass c) {
    for (auto const& i : kClasses)
        if (i.c == c) return i;
    throw Error("unknown word class");
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto const pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

char const* to_string(WordClass c) { return info(c).tag; }

std::optional<WordClass> word_class_from_string(std::string_view tag) {
    for (auto const& i : kClasses)
        if (tag == i.tag) return i.c;
    return std::nullopt;
}

std::vector<WordClass> all_word_classes() {
    std::vector<WordClass> out;
    for (auto const& i : kClasses) out.push_back(i.c);
    return out;
}

bool is_content_word(WordClass c) { return info(c).content; }

PregroupType type_template(WordClass c) { return parse_type(info(c).type); }

std::string LexiconEntry::surface_text() const {
    std::string out;
    for (auto const& t : surface) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

Lexicon Lexicon::parse(std::string_view text) {
    Lexicon lex;
    std::set<std::pair<std::string, WordClass>> seen;
    auto const lines = split(text, '\n');
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = lines[i];
        auto const lineno = i + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto const fields = split(line, '\t');
        if (fields.size() < 3 || fields.size() > 4)
            throw LexiconError("expected 3 or 4 tab-separated fields, got " + std::to_string(fields.size()), lineno);
        LexiconEntry e;
        e.line = lineno;
        e.surface = split(fields[0], ' ');
        for (auto const& tok : e.surface)
            if (tok.empty()) throw LexiconError("empty surface token", lineno);
        auto const c = word_class_from_string(fields[1]);
        if (!c) throw LexiconError("unknown class '" + fields[1] + "'", lineno);
        e.word_class = *c;
        e.lemma = fields[2];
        if (e.lemma.empty()) throw LexiconError("empty lemma", lineno);
        auto const gaps = std::count(e.surface.begin(), e.surface.end(), std::string("_"));
        if (gaps > 0 && (e.word_class != WordClass::PassiveMarker || gaps > 1 || e.surface.front() == "_" ||
                         e.surface.back() == "_"))
            throw LexiconError("'_' is only allowed once, inside a passive-marker surface", lineno);
        if (fields.size() == 4) {
            try {
                e.type = parse_type(fields[3]);
            } catch (SyntaxError const& err) {
                throw LexiconError(std::string("bad type override: ") + err.what(), lineno);
            }
            e.type_overridden = true;
            if (e.type.atoms.size() != type_template(e.word_class).atoms.size())
                throw LexiconError("type override has a different port count than the class template", lineno);
        } else {
            e.type = type_template(e.word_class);
        }
        if (!seen.insert({e.surface_text(), e.word_class}).second)
            throw LexiconError("duplicate entry '" + e.surface_text() + "' (" + fields[1] + ")", lineno);
        lex.entries_.push_back(std::move(e));
    }
    return lex;
}

Lexicon Lexicon::load(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open lexicon '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::vector<LexiconMatch> Lexicon::match(std::vector<std::string> const& tokens, std::size_t pos) const {
    std::vector<LexiconMatch> found;
    for (auto const& e : entries_) {
        if (pos + e.surface.size() > tokens.size()) continue;
        LexiconMatch m{&e, e.surface.size(), {}};
        bool ok = true;
        for (std::size_t k = 0; k < e.surface.size() && ok; ++k) {
            auto const& want = e.surface[k];
            auto const& tok = tokens[pos + k];
            if (want == "_") {
                auto const* participle = find(tok, WordClass::TransitiveVerb);
                if (!participle) ok = false;
                else m.gap_lemma = participle->lemma;
            } else if (want != tok) {
                ok = false;
            }
        }
        if (ok) found.push_back(m);
    }
    std::size_t longest = 0;
    for (auto const& m : found) longest = std::max(longest, m.length);
    std::erase_if(found, [&](LexiconMatch const& m) { return m.length != longest; });
    return found;
}

LexiconEntry const* Lexicon::find(std::string const& surface, std::optional<WordClass> c) const {
    for (auto const& e : entries_)
        if (e.surface_text() == surface && (!c || e.word_class == *c)) return &e;
    return nullptr;
}

std::vector<std::string> Lexicon::alphabet() const {
    std::set<std::string> bases{"s"};
    std::function<void(TypeAtom const&)> add = [&](TypeAtom const& t) {
        if (t.is_simple()) bases.insert(t.simple.base);
        else
            for (auto const& p : t.parts) add(p);
    };
    for (auto const& e : entries_)
        for (auto const& a : e.type.atoms) add(a);
    return {bases.begin(), bases.end()};
}

Diagram Lexicon::derived_wiring(LexiconEntry const& entry, std::vector<WireType> const& ports, Mode mode) const {
    std::string key = std::string(to_string(entry.word_class)) + "|" + entry.lemma + "|" + to_string(mode);
    for (auto const& p : ports) key += "|" + to_string(p);
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end())
        it = cache_.emplace(key, derive_possessive_wiring(entry.word_class, entry.lemma, ports, mode)).first;
    return it->second;
}

}  // namespace gramwire
