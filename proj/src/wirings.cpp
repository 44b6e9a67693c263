#include <algorithm>

#include "gramwire/error.hpp"
#include "gramwire/lexicon.hpp"

namespace gramwire {

namespace {

TypeAtom const kNoun("n", 0);

Port out(WireType t) { return {std::move(t), PortDir::Out}; }
Port in(WireType t) { return {std::move(t), PortDir::In}; }

struct BundleEnd {
    PortRef bundle;
    std::vector<PortRef> components;  // sentence order: subject first
};

std::int64_t require_sentence(WireType const& t, std::string const& who) {
    auto const e = sentence_bundle_exponent(t);
    if (!e) throw Error(who + ": sentence port " + to_string(t) + " is not a resolved noun bundle");
    return *e;
}

/// Opens a sentence bundle that reaches this word through a cup. An odd
/// exponent reverses the component order relative to the sentence.
BundleEnd open_bundle(Diagram& d, WireType const& t, std::string const& who) {
    auto const e = require_sentence(t, who);
    auto const u = d.add_unwrap(t.parts, PortDir::Out);
    BundleEnd end{{u, 0}, {}};
    auto const k = static_cast<std::uint32_t>(t.parts.size());
    for (std::uint32_t c = 0; c < k; ++c) end.components.push_back({u, (e % 2 != 0 ? k - 1 - c : c) + 1});
    return end;
}

/// Produces a sentence bundle from component inputs.
BundleEnd make_bundle(Diagram& d, WireType const& t, std::string const& who) {
    auto const e = require_sentence(t, who);
    auto const w = d.add_wrap(t.parts);
    auto const k = static_cast<std::uint32_t>(t.parts.size());
    BundleEnd end{{w, k}, {}};
    for (std::uint32_t c = 0; c < k; ++c) end.components.push_back({w, e % 2 != 0 ? k - 1 - c : c});
    return end;
}

void expect(std::vector<WireType> const& ports, std::vector<std::optional<WireType>> const& pattern,
            std::string const& who) {
    if (ports.size() != pattern.size())
        throw Error(who + ": expected " + std::to_string(pattern.size()) + " ports, got " + std::to_string(ports.size()));
    for (std::size_t i = 0; i < ports.size(); ++i)
        if (pattern[i] && ports[i] != *pattern[i])
            throw Error(who + ": port " + std::to_string(i) + " is " + to_string(ports[i]) + ", expected " +
                        to_string(*pattern[i]));
}

Diagram noun_wiring(std::string const& lemma, std::vector<WireType> const& ports) {
    expect(ports, {kNoun}, "noun");
    Diagram d;
    auto const box = d.add_content(lemma, {kNoun});
    d.boundary_out() = {{box, 0}};
    return d;
}

Diagram determiner_wiring(std::vector<WireType> const& ports) {
    expect(ports, {kNoun, TypeAtom("n", -1)}, "determiner");
    Diagram d;
    auto const s = d.add_spider({out(ports[0]), out(ports[1])});
    d.boundary_out() = {{s, 0}, {s, 1}};
    return d;
}

Diagram adjective_wiring(std::string const& lemma, std::vector<WireType> const& ports) {
    expect(ports, {kNoun, TypeAtom("n", -1)}, "adjective");
    Diagram d;
    auto const box = d.add_content(lemma, {kNoun});
    auto const s = d.add_spider({out(ports[0]), out(ports[1]), in(kNoun)});
    d.connect({box, 0}, {s, 2});
    d.boundary_out() = {{s, 0}, {s, 1}};
    return d;
}

/// Verbs: one content box with a port per argument. Each argument port meets
/// a copy spider that feeds both the argument's cup and the matching
/// component of the wrapped sentence bundle [subject, objects...].
Diagram verb_wiring(std::string const& lemma, std::size_t arity, std::vector<WireType> const& ports) {
    std::vector<std::optional<WireType>> pattern{TypeAtom("n", 1),
                                                 TypeAtom::wrap(std::vector<TypeAtom>(arity, kNoun))};
    for (std::size_t i = 1; i < arity; ++i) pattern.push_back(TypeAtom("n", -1));
    expect(ports, pattern, "verb '" + lemma + "'");
    Diagram d;
    auto const box = d.add_content(lemma, std::vector<WireType>(arity, kNoun));
    auto const bundle = make_bundle(d, ports[1], lemma);
    std::vector<NodeId> spiders;
    for (std::uint32_t c = 0; c < arity; ++c) {
        // Objects sit to the right of the sentence in reverse: the nearest
        // n^-1 cups the last surface object.
        WireType const arg = c == 0 ? ports[0] : TypeAtom("n", -1);
        auto const s = d.add_spider({in(kNoun), out(arg), out(kNoun)});
        d.connect({box, c}, {s, 0});
        d.connect({s, 2}, bundle.components[c]);
        spiders.push_back(s);
    }
    d.boundary_out() = {{spiders[0], 1}, bundle.bundle};
    for (std::size_t c = arity; c-- > 1;) d.boundary_out().push_back({spiders[c], 1});
    return d;
}

/// Sentence modifiers: the adverb box attaches to every noun wire of the
/// sentence it modifies, which passes through unchanged.
void attach_adverb(Diagram& d, std::string const& lemma, BundleEnd const& from, BundleEnd const& to) {
    auto const k = static_cast<std::uint32_t>(from.components.size());
    auto const box = d.add_content(lemma, std::vector<WireType>(k, kNoun));
    for (std::uint32_t c = 0; c < k; ++c) {
        auto const s = d.add_spider({in(kNoun), out(kNoun), in(kNoun)});
        d.connect(from.components[c], {s, 0});
        d.connect({s, 1}, to.components[c]);
        d.connect({box, c}, {s, 2});
    }
}

Diagram predicative_adverb_wiring(std::string const& lemma, std::vector<WireType> const& ports) {
    expect(ports, {std::nullopt, std::nullopt}, "adv-pred");
    if (ports[0].parts.size() != ports[1].parts.size()) throw Error("adv-pred: sentence ports differ in width");
    Diagram d;
    auto const from = open_bundle(d, ports[0], "adv-pred");
    auto const to = make_bundle(d, ports[1], "adv-pred");
    attach_adverb(d, lemma, from, to);
    d.boundary_out() = {from.bundle, to.bundle};
    return d;
}

Diagram attributive_adverb_wiring(std::string const& lemma, std::vector<WireType> const& ports) {
    expect(ports, {TypeAtom("n", 1), std::nullopt, std::nullopt, kNoun}, "adv-attr");
    Diagram d;
    auto const subject = d.add_spider({out(ports[0]), out(ports[3])});
    auto const to = make_bundle(d, ports[1], "adv-attr");
    auto const from = open_bundle(d, ports[2], "adv-attr");
    if (from.components.size() != to.components.size()) throw Error("adv-attr: sentence ports differ in width");
    attach_adverb(d, lemma, from, to);
    d.boundary_out() = {{subject, 0}, to.bundle, from.bundle, {subject, 1}};
    return d;
}

/// The clause's sentence bundle is deleted whole, as one wrapped wire, so
/// the deletion stays tied to the noun wire that links pronoun and verb.
NodeId delete_bundle(Diagram& d, WireType const& t, std::string const& who) {
    require_sentence(t, who);
    return d.add_spider({out(t)});
}

Diagram subject_relpron_wiring(std::vector<WireType> const& ports) {
    expect(ports, {TypeAtom("n", 1), kNoun, std::nullopt, kNoun}, "relpron-subj");
    Diagram d;
    auto const s = d.add_spider({out(ports[0]), out(ports[1]), out(ports[3])});
    auto const del = delete_bundle(d, ports[2], "relpron-subj");
    d.boundary_out() = {{s, 0}, {s, 1}, {del, 0}, {s, 2}};
    return d;
}

Diagram object_relpron_wiring(std::vector<WireType> const& ports) {
    expect(ports, {TypeAtom("n", 1), kNoun, TypeAtom("n", -2), std::nullopt}, "relpron-obj");
    Diagram d;
    auto const s = d.add_spider({out(ports[0]), out(ports[1]), out(ports[2])});
    auto const del = delete_bundle(d, ports[3], "relpron-obj");
    d.boundary_out() = {{s, 0}, {s, 1}, {s, 2}, {del, 0}};
    return d;
}

/// Passive: the participle's content box with agent and patient swapped
/// onto the surface subject and the by-phrase.
Diagram passive_wiring(std::string const& lemma, std::vector<WireType> const& ports, Mode mode) {
    expect(ports, {TypeAtom("n", 1), TypeAtom::wrap({kNoun, kNoun}), TypeAtom("n", -1)}, "passive-marker");
    Diagram d;
    auto const box = d.add_content(lemma, {kNoun, kNoun});  // agent, patient
    auto const bundle = make_bundle(d, ports[1], "passive-marker");
    auto const subject = d.add_spider({in(kNoun), out(ports[0]), out(kNoun)});
    auto const agent = d.add_spider({in(kNoun), out(ports[2]), out(kNoun)});
    if (mode == Mode::NonCommutative) {
        auto const sw = d.add_swap(kNoun, kNoun);
        d.connect({box, 0}, {sw, 0});
        d.connect({box, 1}, {sw, 1});
        d.connect({sw, 2}, {subject, 0});
        d.connect({sw, 3}, {agent, 0});
    } else {
        d.connect({box, 1}, {subject, 0});
        d.connect({box, 0}, {agent, 0});
    }
    d.connect({subject, 2}, bundle.components[0]);
    d.connect({agent, 2}, bundle.components[1]);
    d.boundary_out() = {{subject, 1}, bundle.bundle, {agent, 1}};
    return d;
}

/// Finds the entry whose whole surface pattern matches `label`.
LexiconEntry const* resolve_word(Lexicon const& lex, std::string const& label, std::optional<WordClass> cls) {
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start <= label.size()) {
        auto const pos = label.find(' ', start);
        tokens.push_back(label.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    for (auto const& m : lex.match(tokens, 0))
        if (m.length == tokens.size() && (!cls || m.entry->word_class == *cls)) return m.entry;
    return nullptr;
}

}  // namespace

Diagram derive_possessive_wiring(WordClass c, std::string const& own_lemma, std::vector<WireType> const& ports,
                                 Mode mode) {
    bool const relative = c == WordClass::PossessiveRelativePronoun;
    if (!relative && c != WordClass::PossessiveMarker) throw Error("not a possessive class");
    if (relative) expect(ports, {TypeAtom("n", 1), kNoun, std::nullopt, kNoun, TypeAtom("n", -1)}, "relpron-poss");
    else expect(ports, {TypeAtom("n", 1), kNoun, TypeAtom("n", -1)}, "possessive-marker");

    // "possessed that possessor owns": a transitive "own" wiring with its
    // sentence deleted. The possessor is its subject.
    Diagram d;
    auto const own = verb_wiring(own_lemma, 2, type_template(WordClass::TransitiveVerb).atoms);
    auto const ids = embed(d, own);
    auto const own_subject = PortRef{ids.at(own.boundary_out()[0].node), own.boundary_out()[0].port};
    auto const own_sentence = PortRef{ids.at(own.boundary_out()[1].node), own.boundary_out()[1].port};
    auto const own_object = PortRef{ids.at(own.boundary_out()[2].node), own.boundary_out()[2].port};
    auto const del = d.add_spider({in(d.port(own_sentence).type)});
    d.connect(own_sentence, {del, 0});

    NodeId possessor, possessed;
    if (relative) {
        // whose: head noun owns the possessed noun, which is the clause subject.
        possessor = d.add_spider({out(ports[0]), out(ports[1]), in(kNoun)});
        possessed = d.add_spider({out(ports[3]), out(ports[4]), in(kNoun)});
        d.connect({possessor, 2}, own_subject);
        d.connect({possessed, 2}, own_object);
        d.boundary_out() = {{possessor, 0}, {possessor, 1}, {possessed, 0}, {possessed, 1}};
    } else {
        possessor = d.add_spider({out(ports[0]), in(kNoun)});
        possessed = d.add_spider({out(ports[1]), out(ports[2]), in(kNoun)});
        d.connect({possessor, 1}, own_subject);
        d.connect({possessed, 2}, own_object);
        d.boundary_out() = {{possessor, 0}, {possessed, 0}, {possessed, 1}};
    }
    d = normalize(std::move(d), mode);
    if (relative) {
        auto const clause = delete_bundle(d, ports[2], "relpron-poss");
        d.boundary_out().insert(d.boundary_out().begin() + 2, PortRef{clause, 0});
    }
    require_valid(d);
    return d;
}

Diagram instantiate_wiring(LexiconEntry const& entry, std::vector<WireType> const& ports, Mode mode,
                           Lexicon const* lexicon, std::string const& lemma_override) {
    auto const& lemma = lemma_override.empty() ? entry.lemma : lemma_override;
    Diagram d;
    switch (entry.word_class) {
        case WordClass::Noun: d = noun_wiring(lemma, ports); break;
        case WordClass::Determiner: d = determiner_wiring(ports); break;
        case WordClass::Adjective: d = adjective_wiring(lemma, ports); break;
        case WordClass::IntransitiveVerb: d = verb_wiring(lemma, 1, ports); break;
        case WordClass::TransitiveVerb: d = verb_wiring(lemma, 2, ports); break;
        case WordClass::DitransitiveVerb: d = verb_wiring(lemma, 3, ports); break;
        case WordClass::PredicativeAdverb: d = predicative_adverb_wiring(lemma, ports); break;
        case WordClass::AttributiveAdverb: d = attributive_adverb_wiring(lemma, ports); break;
        case WordClass::SubjectRelativePronoun: d = subject_relpron_wiring(ports); break;
        case WordClass::ObjectRelativePronoun: d = object_relpron_wiring(ports); break;
        case WordClass::PassiveMarker: d = passive_wiring(lemma, ports, mode); break;
        case WordClass::PossessiveMarker:
        case WordClass::PossessiveRelativePronoun:
            d = lexicon ? lexicon->derived_wiring(entry, ports, mode)
                        : derive_possessive_wiring(entry.word_class, entry.lemma, ports, mode);
            break;
    }
    require_valid(d);
    return d;
}

Diagram instantiate_wiring(LexiconEntry const& entry, Mode mode, Lexicon const* lexicon) {
    std::vector<WireType> ports;
    for (auto const& a : entry.type.atoms) {
        if (a.is_simple() && a.simple.base == "s")
            ports.push_back(TypeAtom::wrap({TypeAtom("n", a.simple.exponent), TypeAtom("n", a.simple.exponent)}));
        else
            ports.push_back(a);
    }
    return instantiate_wiring(entry, ports, mode, lexicon);
}

Diagram substitute_wirings(Diagram const& d, Lexicon const& lex, Mode mode) {
    Diagram out = d;
    std::vector<NodeId> words;
    for (auto const& [id, n] : d.nodes())
        if (n.kind == NodeKind::Word) words.push_back(id);
    for (auto const id : words) {
        auto const& word = d.node(id);
        auto const cls = word.word_class.empty() ? std::nullopt : word_class_from_string(word.word_class);
        LexiconEntry const* entry = resolve_word(lex, word.label, cls);
        if (!entry) throw UnknownWordError(word.label);
        std::vector<WireType> ports;
        for (auto const& p : word.ports) ports.push_back(p.type);
        auto const wiring = instantiate_wiring(*entry, ports, mode, &lex, word.lemma);
        auto const ids = embed(out, wiring);
        std::vector<PortRef> boundary;
        for (auto const& r : wiring.boundary_out()) boundary.push_back({ids.at(r.node), r.port});
        auto remap = [&](PortRef r) { return r.node == id ? boundary.at(r.port) : r; };
        for (auto& w : out.wires()) {
            w.a = remap(w.a);
            w.b = remap(w.b);
        }
        for (auto& r : out.boundary_out()) r = remap(r);
        for (auto& r : out.boundary_in()) r = remap(r);
        out.remove_node(id);
    }
    require_valid(out);
    return out;
}

}  // namespace gramwire
