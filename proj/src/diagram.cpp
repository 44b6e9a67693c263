#include "gramwire/diagram.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gramwire/error.hpp"

namespace gramwire {

NodeId Diagram::add_node(Node node) {
    node.id = next_id_++;
    auto const id = node.id;
    nodes_.emplace(id, std::move(node));
    return id;
}

void Diagram::insert_node(Node node) {
    if (nodes_.contains(node.id)) throw DiagramError("duplicate node id " + std::to_string(node.id));
    next_id_ = std::max(next_id_, node.id + 1);
    nodes_.emplace(node.id, std::move(node));
}

NodeId Diagram::add_word(std::string label, PregroupType const& type, std::string word_class,
                         std::string lemma) {
    Node n;
    n.kind = NodeKind::Word;
    n.label = std::move(label);
    n.word_class = std::move(word_class);
    n.lemma = std::move(lemma);
    for (auto const& a : type.atoms) n.ports.push_back({a, PortDir::Out});
    return add_node(std::move(n));
}

NodeId Diagram::add_content(std::string label, std::vector<WireType> port_types) {
    Node n;
    n.kind = NodeKind::Content;
    n.label = std::move(label);
    for (auto& t : port_types) n.ports.push_back({std::move(t), PortDir::Out});
    return add_node(std::move(n));
}

NodeId Diagram::add_spider(std::vector<Port> legs) {
    if (legs.empty()) throw DiagramError("a spider without legs needs an explicit carrier");
    auto carrier = legs.front().type.is_simple() ? strip_exponents(legs.front().type) : legs.front().type;
    return add_spider(std::move(carrier), std::move(legs));
}

NodeId Diagram::add_spider(WireType carrier, std::vector<Port> legs) {
    Node n;
    n.kind = NodeKind::Spider;
    n.label = "spider";
    n.carrier = std::move(carrier);
    n.ports = std::move(legs);
    return add_node(std::move(n));
}

NodeId Diagram::add_swap(WireType first, WireType second) {
    Node n;
    n.kind = NodeKind::Swap;
    n.label = "swap";
    n.ports = {{first, PortDir::In}, {second, PortDir::In}, {second, PortDir::Out}, {first, PortDir::Out}};
    return add_node(std::move(n));
}

NodeId Diagram::add_wrap(std::vector<WireType> components) {
    Node n;
    n.kind = NodeKind::Wrap;
    n.label = "wrap";
    for (auto const& c : components) n.ports.push_back({c, PortDir::In});
    n.ports.push_back({TypeAtom::wrap(std::move(components)), PortDir::Out});
    return add_node(std::move(n));
}

NodeId Diagram::add_unwrap(std::vector<WireType> components, PortDir bundle_dir) {
    Node n;
    n.kind = NodeKind::Unwrap;
    n.label = "unwrap";
    n.ports.push_back({TypeAtom::wrap(components), bundle_dir});
    for (auto const& c : components) n.ports.push_back({c, PortDir::Out});
    return add_node(std::move(n));
}

void Diagram::connect(PortRef a, PortRef b) {
    (void)port(a);
    (void)port(b);
    wires_.push_back({a, b});
}

void Diagram::remove_node(NodeId id) {
    nodes_.erase(id);
    std::erase_if(wires_, [id](Wire const& w) { return w.a.node == id || w.b.node == id; });
    std::erase_if(boundary_in_, [id](PortRef const& p) { return p.node == id; });
    std::erase_if(boundary_out_, [id](PortRef const& p) { return p.node == id; });
}

void Diagram::remove_wire(std::size_t index) { wires_.erase(wires_.begin() + static_cast<std::ptrdiff_t>(index)); }

Node const& Diagram::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw DiagramError("no node " + std::to_string(id));
    return it->second;
}

Node& Diagram::node(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw DiagramError("no node " + std::to_string(id));
    return it->second;
}

Port const& Diagram::port(PortRef ref) const {
    auto const& n = node(ref.node);
    if (ref.port >= n.ports.size()) throw DiagramError("no port " + to_string(ref));
    return n.ports[ref.port];
}

std::optional<std::size_t> Diagram::wire_at(PortRef ref) const {
    for (std::size_t i = 0; i < wires_.size(); ++i)
        if (wires_[i].a == ref || wires_[i].b == ref) return i;
    return std::nullopt;
}

std::optional<PortRef> Diagram::partner(PortRef ref) const {
    auto w = wire_at(ref);
    if (!w) return std::nullopt;
    return wires_[*w].a == ref ? wires_[*w].b : wires_[*w].a;
}

std::size_t Diagram::count(NodeKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [kind](auto const& kv) { return kv.second.kind == kind; }));
}

bool Diagram::operator==(Diagram const& other) const {
    auto sorted = [](std::vector<Wire> w) {
        for (auto& x : w)
            if (x.b < x.a) std::swap(x.a, x.b);
        std::sort(w.begin(), w.end());
        return w;
    };
    return nodes_ == other.nodes_ && sorted(wires_) == sorted(other.wires_) &&
           boundary_in_ == other.boundary_in_ && boundary_out_ == other.boundary_out_;
}

char const* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Word: return "word";
        case NodeKind::Content: return "content";
        case NodeKind::Spider: return "spider";
        case NodeKind::Swap: return "swap";
        case NodeKind::Wrap: return "wrap";
        case NodeKind::Unwrap: return "unwrap";
    }
    return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string const& text) {
    for (auto k : {NodeKind::Word, NodeKind::Content, NodeKind::Spider, NodeKind::Swap, NodeKind::Wrap,
                   NodeKind::Unwrap})
        if (text == to_string(k)) return k;
    return std::nullopt;
}

std::string to_string(PortRef ref) { return std::to_string(ref.node) + ":" + std::to_string(ref.port); }

WireKind classify_wire(Diagram const& d, Wire const& w) {
    auto const& pa = d.port(w.a);
    auto const& pb = d.port(w.b);
    if (pa.type.is_wrap() != pb.type.is_wrap()) return WireKind::Invalid;
    bool const spider = d.node(w.a.node).kind == NodeKind::Spider || d.node(w.b.node).kind == NodeKind::Spider;
    if (spider) return same_shape(pa.type, pb.type) ? WireKind::SpiderLeg : WireKind::Invalid;
    if (pa.dir != pb.dir) return pa.type == pb.type ? WireKind::Flow : WireKind::Invalid;
    if (!contracts(pa.type, pb.type)) return WireKind::Invalid;
    return pa.dir == PortDir::Out ? WireKind::Cup : WireKind::Cap;
}

namespace {

void check_node(Node const& n, std::vector<Violation>& out) {
    auto const id = std::to_string(n.id);
    switch (n.kind) {
        case NodeKind::Word:
        case NodeKind::Content:
            for (std::size_t i = 0; i < n.ports.size(); ++i)
                if (n.ports[i].dir != PortDir::Out)
                    out.push_back({"port direction", "box " + id + " port " + std::to_string(i) + " must be an output"});
            break;
        case NodeKind::Spider:
            for (std::size_t i = 0; i < n.ports.size(); ++i)
                if (!same_shape(n.ports[i].type, n.carrier))
                    out.push_back({"spider carrier", "spider " + id + " leg " + std::to_string(i) +
                                                         " does not carry " + to_string(n.carrier)});
            break;
        case NodeKind::Swap:
            if (n.ports.size() != 4 || n.ports[0].type != n.ports[3].type || n.ports[1].type != n.ports[2].type)
                out.push_back({"swap shape", "swap " + id + " has inconsistent ports"});
            break;
        case NodeKind::Wrap:
        case NodeKind::Unwrap: {
            bool const wrap = n.kind == NodeKind::Wrap;
            if (n.ports.size() < 2) {
                out.push_back({"gadget shape", "gadget " + id + " needs at least one component"});
                break;
            }
            std::vector<TypeAtom> comps;
            auto const bundle_index = wrap ? n.ports.size() - 1 : 0;
            for (std::size_t i = 0; i < n.ports.size(); ++i)
                if (i != bundle_index) comps.push_back(n.ports[i].type);
            if (n.ports[bundle_index].type != TypeAtom::wrap(comps))
                out.push_back({"gadget shape", "gadget " + id + " bundle does not match its components"});
            break;
        }
    }
}

}  // namespace

std::vector<Violation> validate(Diagram const& d) {
    std::vector<Violation> out;
    for (auto const& [id, n] : d.nodes()) check_node(n, out);

    std::map<PortRef, int> cover;
    auto touch = [&](PortRef r, std::string const& where) {
        if (!d.has_node(r.node) || r.port >= d.node(r.node).ports.size()) {
            out.push_back({"dangling reference", where + " references missing port " + to_string(r)});
            return false;
        }
        ++cover[r];
        return true;
    };
    std::vector<std::pair<NodeId, NodeId>> flow_edges;
    for (auto const& w : d.wires()) {
        bool const ok = touch(w.a, "wire") & touch(w.b, "wire");
        if (!ok) continue;
        auto const name = to_string(w.a) + "-" + to_string(w.b);
        auto const& pa = d.port(w.a);
        auto const& pb = d.port(w.b);
        if (pa.type.is_wrap() != pb.type.is_wrap()) {
            out.push_back({"bundle breach", "wire " + name + " joins a bundle to a simple wire"});
            continue;
        }
        auto const kind = classify_wire(d, w);
        if (kind == WireKind::Invalid) {
            out.push_back({"type mismatch", "wire " + name + " joins " + to_string(pa.type) + " and " +
                                                to_string(pb.type)});
            continue;
        }
        if (pa.dir != pb.dir) {
            if (pa.dir == PortDir::Out) flow_edges.emplace_back(w.a.node, w.b.node);
            else flow_edges.emplace_back(w.b.node, w.a.node);
        }
    }
    for (auto const& r : d.boundary_in()) touch(r, "boundary");
    for (auto const& r : d.boundary_out()) touch(r, "boundary");

    for (auto const& [id, n] : d.nodes()) {
        for (std::uint32_t i = 0; i < n.ports.size(); ++i) {
            auto const c = cover[{id, i}];
            if (c == 0) out.push_back({"uncovered port", "port " + to_string({id, i}) + " is not connected"});
            else if (c > 1) out.push_back({"port reuse", "port " + to_string({id, i}) + " is used " + std::to_string(c) + " times"});
        }
    }

    std::map<NodeId, std::vector<NodeId>> adj;
    for (auto [a, b] : flow_edges) adj[a].push_back(b);
    std::map<NodeId, int> state;
    std::function<bool(NodeId)> dfs = [&](NodeId v) {
        state[v] = 1;
        for (auto w : adj[v]) {
            if (state[w] == 1) return true;
            if (state[w] == 0 && dfs(w)) return true;
        }
        state[v] = 2;
        return false;
    };
    for (auto const& [id, n] : d.nodes()) {
        if (state[id] == 0 && dfs(id)) {
            out.push_back({"flow cycle", "flow wires form a cycle through node " + std::to_string(id)});
            break;
        }
    }
    return out;
}

void require_valid(Diagram const& d) {
    auto v = validate(d);
    if (v.empty()) return;
    std::string msg = "invalid diagram:";
    for (auto const& x : v) msg += " [" + x.code + "] " + x.message + ";";
    throw DiagramError(msg);
}

std::map<NodeId, NodeId> embed(Diagram& host, Diagram const& part) {
    std::map<NodeId, NodeId> ids;
    for (auto const& [id, n] : part.nodes()) ids[id] = host.add_node(n);
    for (auto const& w : part.wires())
        host.connect({ids.at(w.a.node), w.a.port}, {ids.at(w.b.node), w.b.port});
    return ids;
}

std::vector<PregroupType> resolve_sentence_slots(TypedSentence const& s, Reduction const& r,
                                                 ReductionOptions const& opts) {
    auto units = s.units();
    auto const owners = s.unit_owners();
    auto is_slot = [&](std::size_t i) {
        return units[i].is_simple() && units[i].simple.base == opts.sentence_base;
    };
    // Resolved shape of a slot: (width, leaf base).
    std::vector<std::optional<std::pair<std::size_t, std::string>>> shape(units.size());
    for (std::size_t i = 0; i < units.size(); ++i)
        if (sentence_bundle_exponent(units[i])) shape[i] = {{units[i].parts.size(), units[i].parts.front().simple.base}};

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const& l : r.links) {
            for (auto [from, to] : {std::pair{l.left, l.right}, std::pair{l.right, l.left}}) {
                if (shape[from] && !shape[to] && is_slot(to)) {
                    shape[to] = shape[from];
                    changed = true;
                }
            }
        }
        // Slots of one word share a shape: sentence modifiers keep the width.
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (!is_slot(i) || !shape[i]) continue;
            for (std::size_t j = 0; j < units.size(); ++j) {
                if (owners[j] == owners[i] && is_slot(j) && !shape[j]) {
                    shape[j] = shape[i];
                    changed = true;
                }
            }
        }
    }

    std::vector<PregroupType> types(s.tokens.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
        auto atom = units[i];
        if (is_slot(i) && shape[i]) {
            std::vector<TypeAtom> parts(shape[i]->first, TypeAtom(shape[i]->second, units[i].simple.exponent));
            atom = TypeAtom::wrap(std::move(parts));
        }
        types[owners[i]].atoms.push_back(std::move(atom));
    }
    return types;
}

Diagram build_sentence_diagram(TypedSentence const& s, Reduction const& r, ReductionOptions const& opts,
                               std::vector<std::string> const& word_classes,
                               std::vector<std::string> const& lemmas) {
    auto const units = s.units();
    auto const issues = validate_reduction(units, r, "", opts);
    if (!issues.empty()) throw DiagramError("invalid reduction: " + issues.front());

    auto const types = resolve_sentence_slots(s, r, opts);
    Diagram d;
    std::vector<PortRef> unit_ports;
    for (std::size_t t = 0; t < s.tokens.size(); ++t) {
        auto const id = d.add_word(s.tokens[t].surface, types[t], t < word_classes.size() ? word_classes[t] : "",
                                   t < lemmas.size() ? lemmas[t] : "");
        for (std::uint32_t p = 0; p < types[t].atoms.size(); ++p) unit_ports.push_back({id, p});
    }
    for (auto const& l : r.links) {
        Wire w{unit_ports[l.left], unit_ports[l.right]};
        if (classify_wire(d, w) != WireKind::Cup)
            throw DiagramError("link (" + std::to_string(l.left) + "," + std::to_string(l.right) +
                               ") does not form a cup");
        d.connect(w.a, w.b);
    }
    for (auto i : r.residual) d.boundary_out().push_back(unit_ports[i]);
    require_valid(d);
    return d;
}

}  // namespace gramwire
