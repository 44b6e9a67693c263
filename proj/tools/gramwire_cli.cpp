// Command-line front end. Talks to the library only through the C API.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gramwire/gramwire.h"

namespace {

enum Exit { kPositive = 0, kNegative = 1, kError = 2 };

struct Config {
    std::string lexicon;
    std::string mode = "commutative";
    std::string target = "s";
    std::string format = "dot";
    std::string stage = "normal";
};

int exit_for(gw_status s) {
    switch (s) {
        case GW_OK: return kPositive;
        case GW_NEGATIVE:
        case GW_NOT_GRAMMATICAL: return kNegative;
        default: return kError;
    }
}

// Owns a string handed out by the C API.
struct Text {
    char* p = nullptr;
    ~Text() { gw_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

class Session {
public:
    explicit Session(Config const& cfg) : cfg_(cfg) {}
    ~Session() { gw_lexicon_free(lex_); }

    // Returns kError after reporting when the lexicon cannot be loaded.
    int open() {
        auto path = cfg_.lexicon;
        if (path.empty()) {
            if (char const* env = std::getenv("GRAMWIRE_LEXICON")) path = env;
        }
        if (path.empty()) {
            std::cerr << "error: no lexicon given (use --lexicon or GRAMWIRE_LEXICON)\n";
            return kError;
        }
        Text msg;
        if (auto s = gw_lexicon_load(path.c_str(), &lex_, &msg.p); s != GW_OK) {
            std::cerr << "error: " << msg.str() << "\n";
            return kError;
        }
        opts_.mode = cfg_.mode == "commutative" ? GW_MODE_COMMUTATIVE : GW_MODE_NONCOMMUTATIVE;
        opts_.target = cfg_.target.c_str();
        return kPositive;
    }

    gw_lexicon const* lex() const { return lex_; }
    gw_options const* opts() const { return &opts_; }

private:
    Config const& cfg_;
    gw_lexicon* lex_ = nullptr;
    gw_options opts_{GW_MODE_COMMUTATIVE, "s"};
};

int report(gw_status s, Text const& t) {
    if (s == GW_NOT_GRAMMATICAL) {
        std::cout << "NOT GRAMMATICAL\n";
        std::cerr << t.str() << "\n";
    } else if (exit_for(s) == kError) {
        std::cerr << "error: " << gw_status_name(s) << ": " << t.str() << "\n";
    } else {
        std::cout << t.str();
        if (!t.str().empty() && t.str().back() != '\n') std::cout << "\n";
    }
    return exit_for(s);
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Pregroup grammar with internal wirings"};
    app.require_subcommand(1);

    app.add_option("--lexicon", cfg.lexicon, "Lexicon file (default: $GRAMWIRE_LEXICON)");
    app.add_option("--mode", cfg.mode, "Rewrite mode")
        ->check(CLI::IsMember({"commutative", "noncommutative", "non-commutative"}));
    app.add_option("--target", cfg.target, "Target base type");
    app.add_option("--format", cfg.format, "Diagram format")->check(CLI::IsMember({"dot", "json", "text"}));
    app.add_option("--stage", cfg.stage, "Pipeline stage")
        ->check(CLI::IsMember({"raw", "wired", "closed", "normal"}));

    std::string sentence, second, lexicon_path;

    auto* check = app.add_subcommand("check", "Decide grammaticality and print the reduction links");
    check->add_option("sentence", sentence)->required();
    check->fallthrough();

    auto* diagram = app.add_subcommand("diagram", "Print the sentence diagram at a pipeline stage");
    diagram->add_option("sentence", sentence)->required();
    diagram->fallthrough();

    auto* equiv = app.add_subcommand("equiv", "Compare the normal forms of two sentences");
    equiv->add_option("first", sentence)->required();
    equiv->add_option("second", second)->required();
    equiv->fallthrough();

    auto* lexicon = app.add_subcommand("lexicon", "Lexicon utilities");
    lexicon->require_subcommand(1);
    auto* validate = lexicon->add_subcommand("validate", "Parse a lexicon and report problems");
    validate->add_option("path", lexicon_path, "Lexicon file (default: --lexicon)");
    validate->fallthrough();
    lexicon->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return kError;
    }

    if (validate->parsed() && !lexicon_path.empty()) cfg.lexicon = lexicon_path;

    Session session(cfg);
    if (int rc = session.open(); rc != kPositive) return rc;

    Text out;
    if (check->parsed()) return report(gw_check(session.lex(), sentence.c_str(), session.opts(), &out.p), out);
    if (diagram->parsed()) {
        static std::map<std::string, gw_stage> const stages{
            {"raw", GW_STAGE_RAW}, {"wired", GW_STAGE_WIRED}, {"closed", GW_STAGE_CLOSED}, {"normal", GW_STAGE_NORMAL}};
        static std::map<std::string, gw_format> const formats{
            {"dot", GW_FORMAT_DOT}, {"json", GW_FORMAT_JSON}, {"text", GW_FORMAT_TEXT}};
        return report(gw_diagram(session.lex(), sentence.c_str(), session.opts(), stages.at(cfg.stage),
                                 formats.at(cfg.format), &out.p),
                      out);
    }
    if (equiv->parsed())
        return report(gw_equiv(session.lex(), sentence.c_str(), second.c_str(), session.opts(), &out.p), out);
    if (validate->parsed()) {
        std::cout << "OK " << gw_lexicon_size(session.lex()) << " entries\n";
        return kPositive;
    }
    return kError;
}
