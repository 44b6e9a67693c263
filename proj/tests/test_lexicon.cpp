#include <doctest.h>

#include "gramwire/error.hpp"
#include "gramwire/lexicon.hpp"
#include "gramwire/pipeline.hpp"
#include "support.hpp"

using namespace gramwire;

namespace {

std::size_t error_line(std::string const& text) {
    try {
        (void)Lexicon::parse(text);
    } catch (LexiconError const& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_SUITE("lexicon") {
    TEST_CASE("class templates") {
        CHECK(to_string(type_template(WordClass::TransitiveVerb)) == "n^1 [n n] n^-1");
        CHECK(to_string(type_template(WordClass::DitransitiveVerb)) == "n^1 [n n n] n^-1 n^-1");
        CHECK(to_string(type_template(WordClass::ObjectRelativePronoun)) == "n^1 n n^-2 s^-1");
        for (auto c : all_word_classes()) CHECK(word_class_from_string(to_string(c)) == c);
        CHECK(is_content_word(WordClass::Noun));
        CHECK_FALSE(is_content_word(WordClass::Determiner));
    }

    TEST_CASE("parsing skips comments and blank lines") {
        auto const lex = Lexicon::parse("# header\n\nalice\tnoun\talice\r\nlikes\ttv\tlike\n");
        REQUIRE(lex.entries().size() == 2);
        CHECK(lex.entries()[1].line == 4);
        CHECK(lex.entries()[1].lemma == "like");
        CHECK_FALSE(lex.entries()[1].type_overridden);
    }

    TEST_CASE("type overrides") {
        auto const lex = Lexicon::parse("alice\tnoun\talice\tnp\n");
        CHECK(to_string(lex.entries()[0].type) == "np");
        CHECK(lex.entries()[0].type_overridden);
        CHECK(lex.alphabet() == std::vector<std::string>{"np", "s"});
    }

    TEST_CASE("errors carry the 1-based line number") {
        CHECK(error_line("alice\tnoun\n") == 1);
        CHECK(error_line("ok\tnoun\tok\nx\tgerund\tx\n") == 2);
        CHECK(error_line("a\tnoun\ta\n\nb\tnoun\tb\tn^\n") == 3);
        CHECK(error_line("a\tnoun\ta\na\tnoun\tb\n") == 2);
        CHECK(error_line("a\tnoun\t\n") == 1);
        CHECK(error_line("a  b\tnoun\tx\n") == 1);
        CHECK(error_line("a\ttv\ta\tn n\n") == 1);
        CHECK(error_line("is _\tpassive-marker\tbe\n") == 1);
        CHECK(error_line("_ by\tpassive-marker\tbe\n") == 1);
        CHECK(error_line("is _ _ by\tpassive-marker\tbe\n") == 1);
        CHECK(error_line("the _ dog\tnoun\tdog\n") == 1);
        CHECK_THROWS_AS(Lexicon::load("/nonexistent/demo.lex"), Error);
    }

    TEST_CASE("same surface in two classes is allowed") {
        auto const lex = Lexicon::parse("that\trelpron-subj\tthat\nthat\trelpron-obj\tthat\n");
        CHECK(lex.match({"that"}, 0).size() == 2);
        CHECK(lex.find("that", WordClass::ObjectRelativePronoun)->line == 2);
    }

    TEST_CASE("longest match wins and gaps take transitive participles") {
        auto const& lex = testing::demo_lexicon();
        auto const tokens = tokenize("Alice is bored by the class");
        auto const m = lex.match(tokens, 1);
        REQUIRE(m.size() == 1);
        CHECK(m[0].length == 3);
        CHECK(m[0].gap_lemma == "bore");
        CHECK(lex.match(tokenize("is alice by"), 0).empty());
        CHECK(lex.match(tokens, 0).front().entry->lemma == "alice");
    }

    TEST_CASE("tokenizer lowercases and splits on whitespace") {
        CHECK(tokenize("  Bob 's\tDog \n") == std::vector<std::string>{"bob", "'s", "dog"});
        CHECK(tokenize("").empty());
    }

    TEST_CASE("unknown words are named") {
        try {
            (void)parse_sentence("Alice likes Zebras", testing::demo_lexicon());
            FAIL("accepted");
        } catch (UnknownWordError const& e) {
            CHECK(e.word() == "zebras");
        }
    }

    TEST_CASE("ambiguous words pick the first reading that reduces") {
        auto const& lex = testing::demo_lexicon();
        auto const p = parse_sentence("Alice likes the flowers that Bob gives Claire", lex);
        CHECK(p.entries[4]->word_class == WordClass::ObjectRelativePronoun);
        auto const q = parse_sentence("Alice likes the flowers that bores Bob", lex);
        CHECK(q.entries[4]->word_class == WordClass::SubjectRelativePronoun);
        CHECK_THROWS_AS(parse_sentence("Alice likes", lex), NotGrammaticalError);
    }
}
