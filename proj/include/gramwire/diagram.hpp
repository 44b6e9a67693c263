#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gramwire/reduction.hpp"
#include "gramwire/types.hpp"

namespace gramwire {

using NodeId = std::uint32_t;

enum class NodeKind {
    Word,     ///< black-box word of a raw pregroup diagram
    Content,  ///< labeled box kept inside an internal wiring (content words)
    Spider,
    Swap,
    Wrap,
    Unwrap,
};

enum class PortDir { In, Out };

struct Port {
    WireType type;
    PortDir dir = PortDir::Out;
    bool operator==(Port const&) const = default;
};

/// Ports by kind:
///   Word/Content: one port per wire, all `Out`.
///   Spider: legs in leg order; every leg has the carrier's shape.
///   Swap: `in0 in1 out0 out1`; out0 continues in1 and out1 continues in0.
///   Wrap: `in_0 .. in_{k-1} out` where out is the bundle of the inputs.
///   Unwrap: `in out_0 .. out_{k-1}`.
struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::Word;
    std::string label;
    std::vector<Port> ports;
    WireType carrier;         // spiders only
    std::string word_class;   // words only: lexicon class tag
    std::string lemma;        // words only: content lemma

    bool operator==(Node const&) const = default;
};

struct PortRef {
    NodeId node = 0;
    std::uint32_t port = 0;
    auto operator<=>(PortRef const&) const = default;
};

/// A wire joins two ports. For cups and caps `a` is the left end.
struct Wire {
    PortRef a;
    PortRef b;
    auto operator<=>(Wire const&) const = default;
};

class Diagram {
public:
    NodeId add_node(Node node);
    /// Inserts a node keeping its id (used by importers and rewrites).
    void insert_node(Node node);
    NodeId add_word(std::string label, PregroupType const& type, std::string word_class = {},
                    std::string lemma = {});
    NodeId add_content(std::string label, std::vector<WireType> port_types);
    /// `legs` gives the type and direction of each leg. The carrier is the
    /// exponent-free first leg for simple wires and the first leg itself for
    /// bundles (bundle legs are read as adjoints of the carrier).
    NodeId add_spider(std::vector<Port> legs);
    NodeId add_spider(WireType carrier, std::vector<Port> legs);
    NodeId add_swap(WireType first, WireType second);
    NodeId add_wrap(std::vector<WireType> components);
    /// `bundle_dir` Out gives a bent unwrap: it opens a bundle arriving
    /// through a cup (an adjoint bundle) instead of through a flow wire.
    NodeId add_unwrap(std::vector<WireType> components, PortDir bundle_dir = PortDir::In);

    void connect(PortRef a, PortRef b);
    void remove_node(NodeId id);  // also drops incident wires and boundary entries
    void remove_wire(std::size_t index);

    Node const& node(NodeId id) const;
    Node& node(NodeId id);
    bool has_node(NodeId id) const { return nodes_.contains(id); }
    Port const& port(PortRef ref) const;

    std::map<NodeId, Node> const& nodes() const { return nodes_; }
    std::vector<Wire> const& wires() const { return wires_; }
    std::vector<Wire>& wires() { return wires_; }
    std::vector<PortRef>& boundary_in() { return boundary_in_; }
    std::vector<PortRef> const& boundary_in() const { return boundary_in_; }
    std::vector<PortRef>& boundary_out() { return boundary_out_; }
    std::vector<PortRef> const& boundary_out() const { return boundary_out_; }

    /// Index of the wire touching `ref`, if any.
    std::optional<std::size_t> wire_at(PortRef ref) const;
    /// The port on the other end of the wire at `ref`.
    std::optional<PortRef> partner(PortRef ref) const;

    std::size_t count(NodeKind kind) const;
    NodeId next_id() const { return next_id_; }
    void reserve_ids(NodeId next) { next_id_ = std::max(next_id_, next); }

    /// Structural equality with wires compared as an unordered set.
    bool operator==(Diagram const& other) const;

private:
    std::map<NodeId, Node> nodes_;
    std::vector<Wire> wires_;
    std::vector<PortRef> boundary_in_;
    std::vector<PortRef> boundary_out_;
    NodeId next_id_ = 0;
};

char const* to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string const& text);

enum class WireKind { Flow, Cup, Cap, SpiderLeg, Invalid };

/// Classifies a wire by its endpoint ports. Wires touching a spider only
/// need matching shapes: a spider leg may bend either way.
WireKind classify_wire(Diagram const& d, Wire const& w);

struct Violation {
    std::string code;     ///< e.g. "uncovered port", "bundle breach"
    std::string message;  ///< names the node/port ids involved
};

/// Empty result iff every structural invariant holds.
std::vector<Violation> validate(Diagram const& d);

/// Throws `DiagramError` listing the violations, if any.
void require_valid(Diagram const& d);

/// One word box per token and one cup per link. Residual ports form the
/// output boundary. Sentence slots linked with bundles take the bundle's shape.
/// Throws `DiagramError` naming the offending link for an invalid reduction.
Diagram build_sentence_diagram(TypedSentence const& s, Reduction const& r,
                               ReductionOptions const& opts = {},
                               std::vector<std::string> const& word_classes = {},
                               std::vector<std::string> const& lemmas = {});

/// Word types after sentence-slot resolution, in token order.
std::vector<PregroupType> resolve_sentence_slots(TypedSentence const& s, Reduction const& r,
                                                 ReductionOptions const& opts = {});

std::string export_dot(Diagram const& d);
std::string export_json(Diagram const& d);
/// Plain line-oriented listing.
std::string export_text(Diagram const& d);
/// Throws `SyntaxError` (with a JSON path in the message) on schema violations
/// and `DiagramError` when the document does not validate.
Diagram import_json(std::string const& text);

std::string to_string(PortRef ref);

/// Copies every node and wire of `part` into `host` under fresh ids and
/// returns the id mapping. Boundaries of `part` are not copied.
std::map<NodeId, NodeId> embed(Diagram& host, Diagram const& part);

}  // namespace gramwire
