/* C interface to the gramwire library. */
#ifndef GRAMWIRE_H
#define GRAMWIRE_H

#include <stddef.h>

#if defined(_WIN32)
#  define GW_API __declspec(dllexport)
#else
#  define GW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gw_lexicon gw_lexicon;

typedef enum gw_status {
    GW_OK = 0,
    GW_NEGATIVE = 1,        /* well-formed query, negative answer (DISTINCT) */
    GW_NOT_GRAMMATICAL = 2,
    GW_ERR_ARGUMENT = 3,
    GW_ERR_IO = 4,
    GW_ERR_SYNTAX = 5,
    GW_ERR_LEXICON = 6,
    GW_ERR_UNKNOWN_WORD = 7,
    GW_ERR_DIAGRAM = 8,
    GW_ERR_INTERNAL = 9
} gw_status;

typedef enum gw_mode { GW_MODE_COMMUTATIVE = 0, GW_MODE_NONCOMMUTATIVE = 1 } gw_mode;
typedef enum gw_stage { GW_STAGE_RAW = 0, GW_STAGE_WIRED, GW_STAGE_CLOSED, GW_STAGE_NORMAL } gw_stage;
typedef enum gw_format { GW_FORMAT_DOT = 0, GW_FORMAT_JSON, GW_FORMAT_TEXT } gw_format;

typedef struct gw_options {
    gw_mode mode;
    const char* target; /* NULL means "s" */
} gw_options;

/* Every function that takes `char** out` stores a heap string there on
 * return (result text on success, a message otherwise). Release it with
 * gw_string_free. `out` may be NULL when the text is not wanted. */

GW_API const char* gw_version(void);
GW_API const char* gw_status_name(gw_status status);
GW_API void gw_string_free(char* s);

GW_API gw_status gw_lexicon_load(const char* path, gw_lexicon** lex, char** out);
GW_API gw_status gw_lexicon_parse(const char* text, gw_lexicon** lex, char** out);
GW_API size_t gw_lexicon_size(const gw_lexicon* lex);
GW_API void gw_lexicon_free(gw_lexicon* lex);

/* GW_OK with the link list, or GW_NOT_GRAMMATICAL. */
GW_API gw_status gw_check(const gw_lexicon* lex, const char* sentence, const gw_options* opts, char** out);

GW_API gw_status gw_diagram(const gw_lexicon* lex, const char* sentence, const gw_options* opts, gw_stage stage,
                            gw_format format, char** out);

/* GW_OK with "EQUIV <hash>", or GW_NEGATIVE with "DISTINCT <hash1> <hash2>". */
GW_API gw_status gw_equiv(const gw_lexicon* lex, const char* s1, const char* s2, const gw_options* opts,
                          char** out);

/* Differing canonical line for a DISTINCT verdict, empty otherwise. */
GW_API gw_status gw_equiv_witness(const gw_lexicon* lex, const char* s1, const char* s2, const gw_options* opts,
                                  char** out);

#ifdef __cplusplus
}
#endif

#endif
