#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "support.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string quote(std::string const& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run cli(std::string const& args, std::string const& env = {}) {
    auto const cmd = env + " " + quote(GRAMWIRE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int const status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string const lex = "--lexicon " + quote(testing::data_path("demo.lex")) + " ";
std::string const relative_pair = "'Alice likes the flowers that Bob gives Claire' 'Bob gives Claire the flowers that Alice likes'";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("check prints links or NOT GRAMMATICAL") {
        auto r = cli(lex + "check 'Alice likes Claire'");
        CHECK(r.code == 0);
        CHECK(r.out == "(0,1) (3,4)\n");
        r = cli(lex + "check 'Alice likes'");
        CHECK(r.code == 1);
        CHECK(r.out == "NOT GRAMMATICAL\n");
        CHECK(cli(lex + "check 'Bob gives Claire the flowers that Alice likes'").code == 0);
    }

    TEST_CASE("errors exit with 2") {
        CHECK(cli(lex + "check 'Alice likes zebras'").code == 2);
        CHECK(cli("check 'Alice'", "GRAMWIRE_LEXICON=").code == 2);
        CHECK(cli("--lexicon /nonexistent.lex check x").code == 2);
        CHECK(cli(lex + "--mode cartesian check x").code == 2);
        CHECK(cli(lex + "--format svg diagram x").code == 2);
        CHECK(cli(lex + "frobnicate").code == 2);
        CHECK(cli("").code == 2);
    }

    TEST_CASE("equiv verdicts") {
        auto r = cli(lex + "equiv " + relative_pair);
        CHECK(r.code == 0);
        CHECK(r.out.starts_with("EQUIV "));
        r = cli(lex + "--mode noncommutative equiv " + relative_pair);
        CHECK(r.code == 1);
        CHECK(r.out.starts_with("DISTINCT "));
        CHECK(cli(lex + "equiv 'Alice is bored by the class' 'The class bores Alice'").code == 0);
        r = cli(lex + "equiv 'Alice likes Claire' 'Claire likes Alice'");
        CHECK(r.code == 1);
        CHECK(r.out.size() == std::string("DISTINCT ").size() + 16 + 1 + 16 + 1);
    }

    TEST_CASE("lexicon path comes from the environment") {
        auto r = cli("check 'Alice likes Claire'", "GRAMWIRE_LEXICON=" + quote(testing::data_path("demo.lex")));
        CHECK(r.code == 0);
        r = cli("lexicon validate", "GRAMWIRE_LEXICON=" + quote(testing::data_path("demo.lex")));
        CHECK(r.code == 0);
        CHECK(r.out.starts_with("OK "));
        CHECK(cli("lexicon validate " + quote(testing::data_path("demo.lex"))).code == 0);
    }

    TEST_CASE("diagram output at each stage and format") {
        auto r = cli(lex + "diagram --stage raw --format dot 'Alice likes Claire'");
        CHECK(r.code == 0);
        CHECK(r.out.starts_with("graph diagram {"));
        r = cli(lex + "--target n diagram --stage wired --format json 'Alice'");
        CHECK(r.code == 0);
        CHECK(r.out.find("\"content\"") != std::string::npos);
        r = cli(lex + "diagram --stage normal --format text 'Alice likes the flowers that Bob gives Claire'");
        CHECK(r.code == 0);
        CHECK(r.out.find("wrap") == std::string::npos);
        for (char const* stage : {"raw", "wired", "closed", "normal"})
            for (char const* format : {"dot", "json", "text"}) {
                auto const args = lex + "--mode noncommutative diagram --stage " + stage + " --format " + format +
                                  " 'Alice is bored by the class'";
                auto const a = cli(args);
                CHECK(a.code == 0);
                CHECK(a.out == cli(args).out);
            }
    }
}
