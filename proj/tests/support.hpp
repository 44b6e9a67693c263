#pragma once

#include <string>
#include <vector>

#include "gramwire/lexicon.hpp"
#include "gramwire/rewrite.hpp"

#ifndef GRAMWIRE_DATA_DIR
#  error "GRAMWIRE_DATA_DIR must be defined"
#endif

namespace testing {

inline std::string data_path(std::string const& name) { return std::string(GRAMWIRE_DATA_DIR) + "/" + name; }

inline gramwire::Lexicon const& demo_lexicon() {
    static gramwire::Lexicon const lex = gramwire::Lexicon::load(data_path("demo.lex"));
    return lex;
}

struct Sample {
    char const* text;
    char const* target;
};

/// Every demo sentence, with the type it reduces to.
inline std::vector<Sample> const& demo_sentences() {
    static std::vector<Sample> const all{
        {"Alice likes Claire", "s"},
        {"Claire likes Alice", "s"},
        {"Alice likes the flowers that Bob gives Claire", "s"},
        {"Bob gives Claire the flowers that Alice likes", "s"},
        {"Alice is bored by the class", "s"},
        {"The class bores Alice", "s"},
        {"Alice washes Fido gently", "s"},
        {"Alice gently washes Fido", "s"},
        {"Fido sleeps", "s"},
        {"Alice likes the flowers that bore Bob", "s"},
        {"author whose book entertained John", "n"},
        {"author that owns book that John was entertained by", "n"},
        {"Bob 's dog", "n"},
        {"dog that Bob owns", "n"},
        {"the flowers", "n"},
    };
    return all;
}

/// Deletes the sentence output of a verb wiring, then rebuilds it from
/// copies of the argument wires. Outputs of the wiring are ordered
/// [subject, sentence, last object, ..., first object]; the sentence bundle
/// lists [subject, first object, ...].
inline gramwire::Diagram recover_verb(gramwire::Diagram wiring) {
    using namespace gramwire;
    auto const outs = wiring.boundary_out();
    auto const sentence = outs.at(1);
    auto const arity = static_cast<std::uint32_t>(wiring.port(sentence).type.parts.size());

    auto const del = wiring.add_spider({{wiring.port(sentence).type, PortDir::In}});
    wiring.connect(sentence, {del, 0});

    auto const wrap = wiring.add_wrap(std::vector<WireType>(arity, TypeAtom("n", 0)));
    std::vector<PortRef> rebuilt(outs.size());
    rebuilt[1] = {wrap, arity};
    for (std::size_t i = 0; i < outs.size(); ++i) {
        if (i == 1) continue;
        auto const component = static_cast<std::uint32_t>(i == 0 ? 0 : arity + 1 - i);
        auto const type = wiring.port(outs[i]).type;
        auto const copy = wiring.add_spider({{type, PortDir::In}, {type, PortDir::Out}, {TypeAtom("n", 0), PortDir::Out}});
        wiring.connect(outs[i], {copy, 0});
        wiring.connect({copy, 2}, {wrap, component});
        rebuilt[i] = {copy, 1};
    }
    wiring.boundary_out() = rebuilt;
    return wiring;
}

}  // namespace testing
