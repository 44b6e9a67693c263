// Acceptance checks: one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "gramwire/equivalence.hpp"
#include "gramwire/error.hpp"
#include "support.hpp"

using namespace gramwire;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

struct Run {
    int code = -1;
    std::string out;
};

std::string quote(std::string const& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run cli(std::string const& args) {
    auto const cmd = quote(GRAMWIRE_CLI) + " --lexicon " + quote(testing::data_path("demo.lex")) + " " + args +
                     " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int const status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string first_word(std::string const& s) { return s.substr(0, s.find_first_of(" \n")); }

Lexicon const& lex() { return testing::demo_lexicon(); }

char const* const kRelativeA = "Alice likes the flowers that Bob gives Claire";
char const* const kRelativeB = "Bob gives Claire the flowers that Alice likes";

Outcome reduction_oracle() {
    auto const t0 = Clock::now();
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> len(1, 8), exp(-2, 2), base(0, 1);
    ReductionOptions opts;
    opts.alphabet = {"n", "s"};
    int const samples = 1000;
    int reducible = 0, disagreements = 0;
    for (int i = 0; i < samples; ++i) {
        std::vector<TypeAtom> u;
        for (int k = len(rng); k > 0; --k) u.emplace_back(base(rng) ? "n" : "s", exp(rng));
        auto const text = to_string(PregroupType{u});
        auto const parsed = parse_type(text).atoms;
        for (char const* target : {"s", "n"}) {
            auto const dp = reduce_units(parsed, target, opts);
            auto const oracle = enumerate_reductions(parsed, target, opts);
            bool ok = dp.has_value() == !oracle.empty();
            if (dp) ok = ok && validate_reduction(parsed, *dp, target, opts).empty();
            if (!ok) ++disagreements;
            if (dp) ++reducible;
        }
    }
    double const t = seconds_since(t0);
    std::ostringstream os;
    os << samples << " random strings x 2 targets, " << reducible << " reducible, " << disagreements
       << " disagreements, " << fmt_seconds(t);
    return {disagreements == 0 && t < 10.0, os.str()};
}

Outcome verb_recovery() {
    auto const t0 = Clock::now();
    std::string failed;
    for (char const* verb : {"sleeps", "likes", "gives"})
        for (auto mode : {Mode::Commutative, Mode::NonCommutative}) {
            auto const wiring = instantiate_wiring(*lex().find(verb), mode, &lex());
            auto const rebuilt = testing::recover_verb(wiring);
            if (!validate(rebuilt).empty() || !isomorphic(normalize(rebuilt, mode), normalize(wiring, mode), mode))
                failed += std::string(" ") + verb + "/" + to_string(mode);
        }
    double const t = seconds_since(t0);
    return {failed.empty() && t < 1.0,
            "iv, tv, dtv in both modes" + (failed.empty() ? std::string() : ", failed:" + failed) + ", " +
                fmt_seconds(t)};
}

Outcome relative_clause_pair() {
    auto const t0 = Clock::now();
    auto const pair = quote(kRelativeA) + " " + quote(kRelativeB);
    auto const comm = cli("--mode commutative equiv " + pair);
    auto const nc = cli("--mode noncommutative equiv " + pair);
    double const t = seconds_since(t0);
    bool const ok = first_word(comm.out) == "EQUIV" && comm.code == 0 && first_word(nc.out) == "DISTINCT" &&
                    nc.code == 1 && t < 1.0;
    return {ok, "commutative " + first_word(comm.out) + ", non-commutative " + first_word(nc.out) + ", " +
                    fmt_seconds(t)};
}

Outcome normal_form_structure() {
    auto const t0 = Clock::now();
    std::set<std::string> nouns, verbs;
    for (auto const& e : lex().entries()) {
        if (e.word_class == WordClass::Noun) nouns.insert(e.lemma);
        if (e.word_class == WordClass::TransitiveVerb || e.word_class == WordClass::DitransitiveVerb ||
            e.word_class == WordClass::IntransitiveVerb)
            verbs.insert(e.lemma);
    }
    std::string detail;
    bool ok = true;
    for (char const* s : {kRelativeA, kRelativeB}) {
        auto const d = normal_form(s, lex(), {Mode::Commutative, "s"}).diagram;
        int noun_boxes = 0, verb_boxes = 0, deletes = 0, wraps = 0, off_carrier = 0;
        for (auto const& [id, n] : d.nodes()) {
            if (n.kind == NodeKind::Content) {
                noun_boxes += nouns.contains(n.label);
                verb_boxes += verbs.contains(n.label);
            }
            if (n.kind == NodeKind::Spider && n.ports.size() == 1) ++deletes;
            if (n.kind == NodeKind::Wrap || n.kind == NodeKind::Unwrap) ++wraps;
        }
        for (auto const& w : d.wires())
            for (auto end : {w.a, w.b})
                if (d.node(end.node).kind == NodeKind::Spider &&
                    !(d.port(end).type.is_simple() && d.port(end).type.simple.base == "n"))
                    ++off_carrier;
        ok = ok && noun_boxes == 4 && verb_boxes == 2 && deletes == 0 && wraps == 0 && off_carrier == 0;
        std::ostringstream os;
        os << (detail.empty() ? "" : "; ") << noun_boxes << " noun boxes, " << verb_boxes << " verb boxes, "
           << deletes << " deletes, " << wraps << " wraps, " << off_carrier << " non-n spider wires";
        detail += os.str();
    }
    double const t = seconds_since(t0);
    return {ok && t < 1.0, detail + ", " + fmt_seconds(t)};
}

Outcome passive_voice() {
    auto const* bored = lex().find("bored");
    auto const* bores = lex().find("bores");
    bool const shared = bored && bores && bored->lemma == "bore" && bores->lemma == "bore";
    bool const eq = equivalent("Alice is bored by the class", "The class bores Alice", lex());
    return {shared && eq, std::string("shared lemma ") + (shared ? "yes" : "no") + ", " + (eq ? "EQUIV" : "DISTINCT")};
}

Outcome adverb_placement() {
    bool const eq = equivalent("Alice washes Fido gently", "Alice gently washes Fido", lex());
    return {eq, eq ? "EQUIV" : "DISTINCT"};
}

Outcome possessives() {
    PipelineOptions np{Mode::Commutative, "n"};
    bool const grammatical = is_grammatical(parse_sentence("author whose book entertained John", lex(), "n").typed,
                                            "n", ReductionOptions{"s", lex().alphabet()});
    bool const whose = equivalent("author whose book entertained John",
                                  "author that owns book that John was entertained by", lex(), np);
    bool const genitive = equivalent("Bob 's dog", "dog that Bob owns", lex(), np);
    return {grammatical && whose && genitive, std::string("whose ") + (whose ? "EQUIV" : "DISTINCT") + ", 's " +
                                                  (genitive ? "EQUIV" : "DISTINCT")};
}

/// Random sentences over the demo vocabulary; only those that parse are kept.
class SentenceGenerator {
public:
    explicit SentenceGenerator(std::uint64_t seed) : rng_(seed) {}

    std::string sentence() {
        switch (pick(7)) {
            case 0: return np(2) + " sleeps";
            case 1: return np(2) + " " + any(kTv) + " " + np(1);
            case 2: return np(1) + " gives " + np(1) + " " + np(1);
            case 3: return np(2) + " gently " + any(kTv) + " " + np(1);
            case 4: return np(2) + " " + any(kTv) + " " + np(1) + " gently";
            case 5: return np(1) + " " + any({"is", "was"}) + " " + any(kParticiples) + " by " + np(1);
            default: return np(1) + " " + any(kTv) + " " + np(2);
        }
    }

    std::string noun_phrase() { return np(2); }

private:
    static inline std::vector<std::string> const kNames{"Alice", "Bob", "Claire", "John", "Fido"};
    static inline std::vector<std::string> const kNouns{"flowers", "class", "author", "book", "dog"};
    static inline std::vector<std::string> const kTv{"likes", "owns", "washes", "bores", "entertained"};
    static inline std::vector<std::string> const kParticiples{"bored", "entertained"};

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::string any(std::vector<std::string> const& v) { return v[pick(v.size())]; }

    std::string np(int depth) {
        auto const k = depth > 0 ? pick(7) : pick(3);
        switch (k) {
            case 0: return any(kNames);
            case 1: return "the " + any(kNouns);
            case 2: return any(kNames) + " 's " + any(kNouns);
            case 3: return np(depth - 1) + " that " + any(kTv) + " " + np(0);
            case 4: return np(depth - 1) + " that " + np(0) + " " + any(kTv);
            case 5: return np(depth - 1) + " that " + np(0) + " gives " + np(0);
            default: return any(kNouns) + " whose " + any(kNouns) + " " + any(kTv) + " " + np(0);
        }
    }

    std::mt19937_64 rng_;
};

Outcome confluence() {
    auto const t0 = Clock::now();
    SentenceGenerator gen(2026);
    int diagrams = 0, disagreements = 0, attempts = 0;
    while (diagrams < 200 && attempts < 20000) {
        ++attempts;
        bool const noun_phrase = attempts % 4 == 0;
        auto const text = noun_phrase ? gen.noun_phrase() : gen.sentence();
        if (tokenize(text).size() > 12) continue;
        auto const mode = diagrams % 2 ? Mode::NonCommutative : Mode::Commutative;
        PipelineOptions opts{mode, noun_phrase ? "n" : "s"};
        Diagram closed;
        try {
            closed = sentence_diagram(text, lex(), Stage::Closed, opts);
        } catch (NotGrammaticalError const&) {
            continue;
        }
        ++diagrams;
        auto const reference = canonicalize(normalize(closed, mode), mode).canonical;
        for (std::uint64_t order = 1; order <= 10; ++order) {
            RewriteOptions ro;
            ro.mode = mode;
            ro.shuffle_seed = order * 7919 + static_cast<std::uint64_t>(diagrams);
            if (canonicalize(normalize(closed, ro), mode).canonical != reference) ++disagreements;
        }
    }
    double const t = seconds_since(t0);
    std::ostringstream os;
    os << diagrams << " diagrams x 10 shuffled orders, " << disagreements << " disagreements, " << fmt_seconds(t);
    return {diagrams >= 200 && disagreements == 0 && t < 60.0, os.str()};
}

Outcome negative_control() {
    auto const pair = quote("Alice likes Claire") + " " + quote("Claire likes Alice");
    auto const comm = cli("--mode commutative equiv " + pair);
    auto const nc = cli("--mode noncommutative equiv " + pair);
    auto const bad = cli("check " + quote("Alice likes"));
    bool const ok = first_word(comm.out) == "DISTINCT" && first_word(nc.out) == "DISTINCT" && bad.code == 1 &&
                    bad.out == "NOT GRAMMATICAL\n";
    return {ok, "commutative " + first_word(comm.out) + ", non-commutative " + first_word(nc.out) +
                    ", 'Alice likes' exit " + std::to_string(bad.code)};
}

Outcome wrap_discipline() {
    auto const bad = parse_type("[n p] p^1 n^1 p").atoms;
    auto const good = parse_type("[n p] [p^1 n^1] p").atoms;
    ReductionOptions opts;
    // The flattened string n p p^1 n^1 p does reduce to p.
    std::vector<TypeAtom> flat;
    for (auto const& s : flatten(PregroupType{bad})) flat.emplace_back(s);
    bool const flat_reduces = reduce_units(flat, "p", opts).has_value();
    bool const bad_rejected = !reduce_units(bad, "p", opts) && enumerate_reductions(bad, "p", opts).empty();
    auto const found = reduce_units(good, "p", opts);
    bool const good_found = found && links_to_string(*found) == "(0,1)";
    return {flat_reduces && bad_rejected && good_found,
            std::string("flattened reduces: ") + (flat_reduces ? "yes" : "no") + ", split rejected: " +
                (bad_rejected ? "yes" : "no") + ", bundled found: " + (good_found ? links_to_string(*found) : "no")};
}

Outcome performance() {
    std::vector<std::pair<std::string, std::string>> const pairs{
        {"the dog that Bob owns likes the flowers that Alice gives Claire",
         "Alice gives Claire the flowers that the dog that Bob owns likes"},
        {"Bob 's dog is bored by the author whose book entertained John",
         "the author whose book entertained John bores Bob 's dog"},
        {kRelativeA, kRelativeB},
    };
    double worst = 0;
    std::size_t longest = 0;
    bool ok = true;
    for (auto const& [a, b] : pairs)
        for (char const* mode : {"commutative", "noncommutative"}) {
            longest = std::max({longest, tokenize(a).size(), tokenize(b).size()});
            auto const t0 = Clock::now();
            auto const r = cli(std::string("--mode ") + mode + " equiv " + quote(a) + " " + quote(b));
            worst = std::max(worst, seconds_since(t0));
            ok = ok && (r.code == 0 || r.code == 1);
        }
    return {ok && longest <= 12 && worst < 1.0,
            "slowest equiv " + fmt_seconds(worst) + " on sentences of up to " + std::to_string(longest) + " words"};
}

}  // namespace

int main() {
    std::vector<std::pair<char const*, std::function<Outcome()>>> const criteria{
        {"AC-1", reduction_oracle},   {"AC-2", verb_recovery},       {"AC-3", relative_clause_pair},
        {"AC-4", normal_form_structure}, {"AC-5", passive_voice},    {"AC-6", adverb_placement},
        {"AC-7", possessives},        {"AC-8", confluence},          {"AC-9", negative_control},
        {"AC-10", wrap_discipline},   {"AC-11", performance},
    };
    int failures = 0;
    for (auto const& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (std::exception const& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << name << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "\n";
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures ? 1 : 0;
}
