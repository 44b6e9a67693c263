#include "gramwire/gramwire.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "gramwire/equivalence.hpp"
#include "gramwire/error.hpp"

struct gw_lexicon {
    gramwire::Lexicon lex;
};

namespace {

using namespace gramwire;

void put(char** out, std::string const& text) {
    if (!out) return;
    *out = static_cast<char*>(std::malloc(text.size() + 1));
    if (*out) std::memcpy(*out, text.c_str(), text.size() + 1);
}

PipelineOptions options(gw_options const* opts) {
    PipelineOptions o;
    if (!opts) return o;
    o.mode = opts->mode == GW_MODE_NONCOMMUTATIVE ? Mode::NonCommutative : Mode::Commutative;
    if (opts->target) o.target = opts->target;
    return o;
}

template <class F>
gw_status guarded(char** out, F&& body) {
    if (out) *out = nullptr;
    try {
        return body();
    } catch (NotGrammaticalError const& e) {
        put(out, e.what());
        return GW_NOT_GRAMMATICAL;
    } catch (UnknownWordError const& e) {
        put(out, e.what());
        return GW_ERR_UNKNOWN_WORD;
    } catch (LexiconError const& e) {
        put(out, e.what());
        return GW_ERR_LEXICON;
    } catch (SyntaxError const& e) {
        put(out, e.what());
        return GW_ERR_SYNTAX;
    } catch (DiagramError const& e) {
        put(out, e.what());
        return GW_ERR_DIAGRAM;
    } catch (Error const& e) {
        put(out, e.what());
        return GW_ERR_ARGUMENT;
    } catch (std::bad_alloc const&) {
        return GW_ERR_INTERNAL;
    } catch (std::exception const& e) {
        put(out, e.what());
        return GW_ERR_INTERNAL;
    }
}

gw_status missing(char** out, char const* what) {
    put(out, std::string(what) + " is null");
    return GW_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* gw_version(void) { return "0.1.0"; }

const char* gw_status_name(gw_status status) {
    switch (status) {
        case GW_OK: return "ok";
        case GW_NEGATIVE: return "negative";
        case GW_NOT_GRAMMATICAL: return "not grammatical";
        case GW_ERR_ARGUMENT: return "invalid argument";
        case GW_ERR_IO: return "i/o error";
        case GW_ERR_SYNTAX: return "syntax error";
        case GW_ERR_LEXICON: return "lexicon error";
        case GW_ERR_UNKNOWN_WORD: return "unknown word";
        case GW_ERR_DIAGRAM: return "diagram error";
        case GW_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void gw_string_free(char* s) { std::free(s); }

gw_status gw_lexicon_parse(const char* text, gw_lexicon** lex, char** out) {
    if (lex) *lex = nullptr;
    if (!text) return missing(out, "text");
    if (!lex) return missing(out, "lex");
    return guarded(out, [&] {
        *lex = new gw_lexicon{Lexicon::parse(text)};
        put(out, std::to_string((*lex)->lex.entries().size()) + " entries");
        return GW_OK;
    });
}

gw_status gw_lexicon_load(const char* path, gw_lexicon** lex, char** out) {
    if (lex) *lex = nullptr;
    if (!path) return missing(out, "path");
    if (!lex) return missing(out, "lex");
    return guarded(out, [&] {
        try {
            *lex = new gw_lexicon{Lexicon::load(path)};
        } catch (LexiconError const&) {
            throw;
        } catch (Error const& e) {
            put(out, e.what());
            return GW_ERR_IO;
        }
        put(out, std::to_string((*lex)->lex.entries().size()) + " entries");
        return GW_OK;
    });
}

size_t gw_lexicon_size(const gw_lexicon* lex) { return lex ? lex->lex.entries().size() : 0; }

void gw_lexicon_free(gw_lexicon* lex) { delete lex; }

gw_status gw_check(const gw_lexicon* lex, const char* sentence, const gw_options* opts, char** out) {
    if (!lex) return missing(out, "lex");
    if (!sentence) return missing(out, "sentence");
    return guarded(out, [&] {
        auto const p = parse_sentence(sentence, lex->lex, options(opts).target);
        put(out, links_to_string(p.reduction));
        return GW_OK;
    });
}

gw_status gw_diagram(const gw_lexicon* lex, const char* sentence, const gw_options* opts, gw_stage stage,
                     gw_format format, char** out) {
    if (!lex) return missing(out, "lex");
    if (!sentence) return missing(out, "sentence");
    return guarded(out, [&] {
        if (stage < GW_STAGE_RAW || stage > GW_STAGE_NORMAL) throw Error("invalid stage");
        auto const d = sentence_diagram(sentence, lex->lex, static_cast<Stage>(stage), options(opts));
        switch (format) {
            case GW_FORMAT_DOT: put(out, export_dot(d)); break;
            case GW_FORMAT_JSON: put(out, export_json(d)); break;
            case GW_FORMAT_TEXT: put(out, export_text(d)); break;
            default: throw Error("invalid format");
        }
        return GW_OK;
    });
}

gw_status gw_equiv(const gw_lexicon* lex, const char* s1, const char* s2, const gw_options* opts, char** out) {
    if (!lex) return missing(out, "lex");
    if (!s1 || !s2) return missing(out, "sentence");
    return guarded(out, [&] {
        auto const v = compare(s1, s2, lex->lex, options(opts));
        if (v.equivalent) {
            put(out, "EQUIV " + v.first.hash());
            return GW_OK;
        }
        put(out, "DISTINCT " + v.first.hash() + " " + v.second.hash());
        return GW_NEGATIVE;
    });
}

gw_status gw_equiv_witness(const gw_lexicon* lex, const char* s1, const char* s2, const gw_options* opts,
                           char** out) {
    if (!lex) return missing(out, "lex");
    if (!s1 || !s2) return missing(out, "sentence");
    return guarded(out, [&] {
        auto const v = compare(s1, s2, lex->lex, options(opts));
        put(out, v.witness);
        return v.equivalent ? GW_OK : GW_NEGATIVE;
    });
}

}  // extern "C"
