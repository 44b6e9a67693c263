#include "gramwire/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <tuple>

#include "gramwire/error.hpp"

namespace gramwire {

char const* to_string(Mode mode) {
    return mode == Mode::Commutative ? "commutative" : "noncommutative";
}

std::optional<Mode> mode_from_string(std::string const& text) {
    if (text == "commutative") return Mode::Commutative;
    if (text == "noncommutative" || text == "non-commutative") return Mode::NonCommutative;
    return std::nullopt;
}

namespace {

void remap_ports(Diagram& d, std::function<PortRef(PortRef)> const& f) {
    for (auto& w : d.wires()) {
        w.a = f(w.a);
        w.b = f(w.b);
    }
    for (auto& r : d.boundary_in()) r = f(r);
    for (auto& r : d.boundary_out()) r = f(r);
}

bool on_boundary(Diagram const& d, PortRef ref) {
    return std::find(d.boundary_in().begin(), d.boundary_in().end(), ref) != d.boundary_in().end() ||
           std::find(d.boundary_out().begin(), d.boundary_out().end(), ref) != d.boundary_out().end();
}

void replace_boundary(Diagram& d, PortRef from, PortRef to) {
    for (auto* v : {&d.boundary_in(), &d.boundary_out()})
        for (auto& r : *v)
            if (r == from) r = to;
}

bool fusible(Diagram const& d, Wire const& w) {
    if (w.a.node == w.b.node) return false;
    auto const& x = d.node(w.a.node);
    auto const& y = d.node(w.b.node);
    if (x.kind != NodeKind::Spider || y.kind != NodeKind::Spider) return false;
    if (x.carrier.is_simple() && y.carrier.is_simple()) return x.carrier == y.carrier;
    return x.carrier == y.carrier && classify_wire(d, w) != WireKind::Invalid &&
           d.port(w.a).type == d.port(w.b).type;
}

void check_self_loops(Diagram const& d) {
    for (auto const& w : d.wires())
        if (w.a.node == w.b.node && d.node(w.a.node).kind == NodeKind::Spider)
            throw DiagramError("spider " + std::to_string(w.a.node) + " is wired to itself");
}

/// Fuses the spiders at the two ends of wire `index`. The second spider's
/// legs are spliced into the first at the shared leg, rotated so that the
/// cyclic order of both spiders is kept.
void fuse_at(Diagram& d, std::size_t index) {
    auto const w = d.wires()[index];
    auto const xid = w.a.node;
    auto const yid = w.b.node;
    auto const i = w.a.port;
    auto const j = w.b.port;
    auto const xs = d.node(xid).ports;
    auto const ys = d.node(yid).ports;
    auto const m = static_cast<std::uint32_t>(ys.size());

    std::vector<Port> legs;
    legs.insert(legs.end(), xs.begin(), xs.begin() + i);
    legs.insert(legs.end(), ys.begin() + j + 1, ys.end());
    legs.insert(legs.end(), ys.begin(), ys.begin() + j);
    legs.insert(legs.end(), xs.begin() + i + 1, xs.end());

    d.remove_wire(index);
    remap_ports(d, [&](PortRef r) -> PortRef {
        if (r.node == xid) return {xid, r.port < i ? r.port : r.port + m - 2};
        if (r.node == yid) return {xid, r.port > j ? i + (r.port - j - 1) : i + (m - j - 1) + r.port};
        return r;
    });
    d.node(xid).ports = std::move(legs);
    d.remove_node(yid);
    check_self_loops(d);
}

std::optional<std::size_t> find_fusion(Diagram const& d) {
    std::optional<std::size_t> best;
    NodeId best_key = 0;
    for (std::size_t k = 0; k < d.wires().size(); ++k) {
        auto const& w = d.wires()[k];
        if (!fusible(d, w)) continue;
        auto const key = std::min(w.a.node, w.b.node);
        if (!best || key < best_key) {
            best = k;
            best_key = key;
        }
    }
    return best;
}

/// Applies the identity law at spider `id` if it is well typed there.
bool eliminate_at(Diagram& d, NodeId id, bool apply) {
    auto const& s = d.node(id);
    if (s.kind != NodeKind::Spider) return false;
    if (s.ports.empty()) {
        if (apply) d.remove_node(id);
        return true;
    }
    if (s.ports.size() != 2) return false;
    PortRef const l0{id, 0}, l1{id, 1};
    auto const p0 = d.partner(l0);
    auto const p1 = d.partner(l1);
    if (p0 && p1) {
        if (p0->node == id) throw DiagramError("spider " + std::to_string(id) + " is wired to itself");
        for (auto cand : {Wire{*p0, *p1}, Wire{*p1, *p0}}) {
            if (classify_wire(d, cand) == WireKind::Invalid) continue;
            if (apply) {
                d.remove_node(id);
                d.connect(cand.a, cand.b);
            }
            return true;
        }
        return false;
    }
    // One leg open: the partner port can take its place only if it has the
    // same type and direction as the open leg.
    for (auto [open, wired, partner] : {std::tuple{l0, l1, p1}, std::tuple{l1, l0, p0}}) {
        if (!partner || !on_boundary(d, open)) continue;
        auto const& pt = d.port(*partner);
        auto const& lt = d.port(open);
        if (pt.type != lt.type || pt.dir != lt.dir || partner->node == id) return false;
        if (apply) {
            replace_boundary(d, open, *partner);
            d.remove_node(id);
        }
        return true;
    }
    return false;
}

/// Rewires a swap as two identity spiders, then removes them where legal.
void erase_swap_at(Diagram& d, NodeId id) {
    auto const sw = d.node(id);
    auto const a = d.add_spider({{sw.ports[1].type, PortDir::In}, {sw.ports[2].type, PortDir::Out}});
    auto const b = d.add_spider({{sw.ports[0].type, PortDir::In}, {sw.ports[3].type, PortDir::Out}});
    remap_ports(d, [&](PortRef r) -> PortRef {
        if (r.node != id) return r;
        switch (r.port) {
            case 0: return {b, 0};
            case 1: return {a, 0};
            case 2: return {a, 1};
            default: return {b, 1};
        }
    });
    d.remove_node(id);
    eliminate_at(d, a, true);
    eliminate_at(d, b, true);
}

int adjoint_power(TypeAtom const& carrier, TypeAtom const& leg) {
    TypeAtom up = carrier, down = carrier;
    if (up == leg) return 0;
    for (int k = 1; k <= 16; ++k) {
        up = right_adjoint(up);
        down = left_adjoint(down);
        if (up == leg) return k;
        if (down == leg) return -k;
    }
    throw DiagramError("spider leg " + to_string(leg) + " is not an adjoint of " + to_string(carrier));
}

bool has_bundles(Diagram const& d) {
    for (auto const& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::Wrap || n.kind == NodeKind::Unwrap) return true;
        for (auto const& p : n.ports)
            if (p.type.is_wrap()) return true;
    }
    return false;
}

Diagram unfold_once(Diagram const& d) {
    Diagram out;
    out.reserve_ids(d.next_id());
    std::map<PortRef, std::vector<PortRef>> comps;
    std::map<PortRef, PortRef> simple;

    std::vector<NodeId> affected;
    for (auto const& [id, n] : d.nodes()) {
        bool bundled = n.kind == NodeKind::Wrap || n.kind == NodeKind::Unwrap;
        for (auto const& p : n.ports) bundled = bundled || p.type.is_wrap();
        if (n.kind == NodeKind::Spider && n.carrier.is_wrap()) bundled = true;
        if (!bundled) {
            out.insert_node(n);
            for (std::uint32_t i = 0; i < n.ports.size(); ++i) simple[{id, i}] = {id, i};
        } else {
            affected.push_back(id);
        }
    }
    out.reserve_ids(d.next_id());

    for (auto id : affected) {
        auto const& n = d.node(id);
        switch (n.kind) {
            case NodeKind::Word:
            case NodeKind::Content: {
                Node copy = n;
                copy.ports.clear();
                std::vector<std::pair<std::uint32_t, std::size_t>> spans;
                for (std::uint32_t i = 0; i < n.ports.size(); ++i) {
                    auto const& p = n.ports[i];
                    if (p.type.is_simple()) {
                        simple[{id, i}] = {id, static_cast<std::uint32_t>(copy.ports.size())};
                        copy.ports.push_back(p);
                    } else {
                        auto& list = comps[{id, i}];
                        for (auto const& c : p.type.parts) {
                            list.push_back({id, static_cast<std::uint32_t>(copy.ports.size())});
                            copy.ports.push_back({c, p.dir});
                        }
                    }
                }
                out.insert_node(std::move(copy));
                break;
            }
            case NodeKind::Spider: {
                auto const k = n.carrier.parts.size();
                std::vector<NodeId> parts;
                for (std::size_t c = 0; c < k; ++c) {
                    auto const& cc = n.carrier.parts[c];
                    parts.push_back(out.add_spider(cc.is_simple() ? strip_exponents(cc) : cc, {}));
                }
                for (std::uint32_t leg = 0; leg < n.ports.size(); ++leg) {
                    auto const& lt = n.ports[leg].type;
                    bool const reversed = adjoint_power(n.carrier, lt) % 2 != 0;
                    auto& list = comps[{id, leg}];
                    list.resize(k);
                    for (std::size_t c = 0; c < k; ++c) {
                        auto const idx = reversed ? k - 1 - c : c;
                        auto& sp = out.node(parts[c]);
                        list[idx] = {parts[c], static_cast<std::uint32_t>(sp.ports.size())};
                        sp.ports.push_back({lt.parts[idx], n.ports[leg].dir});
                    }
                }
                break;
            }
            case NodeKind::Wrap:
            case NodeKind::Unwrap: {
                bool const wrap = n.kind == NodeKind::Wrap;
                auto const bundle_index = static_cast<std::uint32_t>(wrap ? n.ports.size() - 1 : 0);
                auto& list = comps[{id, bundle_index}];
                for (std::uint32_t i = 0; i < n.ports.size(); ++i) {
                    if (i == bundle_index) continue;
                    auto const& ct = n.ports[i].type;
                    auto const sp = out.add_spider({{ct, PortDir::In}, {ct, PortDir::Out}});
                    if (wrap) {
                        simple[{id, i}] = {sp, 0};
                        list.push_back({sp, 1});
                    } else {
                        list.push_back({sp, 0});
                        simple[{id, i}] = {sp, 1};
                    }
                }
                break;
            }
            case NodeKind::Swap:
                throw DiagramError("swaps of bundles must be unfolded by hand (node " + std::to_string(id) + ")");
        }
    }

    // Component ports of nested bundles are themselves bundles and stay in
    // `simple` via their parent's list; resolve either map.
    auto lookup_single = [&](PortRef r) {
        auto it = simple.find(r);
        if (it == simple.end()) throw DiagramError("unmapped port " + to_string(r));
        return it->second;
    };
    for (auto const& w : d.wires()) {
        auto const& ta = d.port(w.a).type;
        auto const& tb = d.port(w.b).type;
        if (ta.is_simple()) {
            out.connect(lookup_single(w.a), lookup_single(w.b));
            continue;
        }
        auto const& ca = comps.at(w.a);
        auto const& cb = comps.at(w.b);
        bool reversed;
        if (ta == tb) reversed = false;
        else if (contracts(ta, tb) || contracts(tb, ta)) reversed = true;
        else throw DiagramError("bundle shape mismatch across wire " + to_string(w.a) + "-" + to_string(w.b));
        if (ca.size() != cb.size())
            throw DiagramError("bundle shape mismatch across wire " + to_string(w.a) + "-" + to_string(w.b));
        auto const k = ca.size();
        for (std::size_t i = 0; i < k; ++i) {
            auto left = ca[i];
            auto right = cb[reversed ? k - 1 - i : i];
            out.connect(left, right);
        }
    }
    for (auto [from, to] : {std::pair{&d.boundary_in(), &out.boundary_in()},
                            std::pair{&d.boundary_out(), &out.boundary_out()}}) {
        for (auto const& r : *from) {
            if (d.port(r).type.is_wrap()) {
                auto const& list = comps.at(r);
                to->insert(to->end(), list.begin(), list.end());
            } else {
                to->push_back(lookup_single(r));
            }
        }
    }
    return out;
}

struct Step {
    enum Kind { Fuse, Identity, Swap } kind;
    std::size_t site;  // wire index for Fuse, node id otherwise
};

std::vector<Step> applicable(Diagram& d, Mode mode, bool first_only) {
    std::vector<Step> steps;
    if (first_only) {
        if (auto w = find_fusion(d)) return {{Step::Fuse, *w}};
    } else {
        for (std::size_t k = 0; k < d.wires().size(); ++k)
            if (fusible(d, d.wires()[k])) steps.push_back({Step::Fuse, k});
    }
    for (auto const& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::Spider && eliminate_at(d, id, false)) steps.push_back({Step::Identity, id});
        else if (n.kind == NodeKind::Swap && mode == Mode::Commutative) steps.push_back({Step::Swap, id});
        if (first_only && !steps.empty()) return steps;
    }
    return steps;
}

/// Termination measure: every step strictly decreases it lexicographically.
std::tuple<std::size_t, std::size_t> measure(Diagram const& d) {
    return {d.count(NodeKind::Swap), d.nodes().size()};
}

void apply(Diagram& d, Step const& s) {
    switch (s.kind) {
        case Step::Fuse: fuse_at(d, s.site); break;
        case Step::Identity: eliminate_at(d, static_cast<NodeId>(s.site), true); break;
        case Step::Swap: erase_swap_at(d, static_cast<NodeId>(s.site)); break;
    }
}

}  // namespace

Diagram fuse_spiders(Diagram d, Mode) {
    check_self_loops(d);
    while (auto w = find_fusion(d)) fuse_at(d, *w);
    return d;
}

Diagram eliminate_identities(Diagram d) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const& [id, n] : d.nodes()) {
            if (n.kind == NodeKind::Spider && eliminate_at(d, id, false)) {
                eliminate_at(d, id, true);
                changed = true;
                break;
            }
        }
    }
    return d;
}

Diagram unfold_wraps(Diagram d) {
    while (has_bundles(d)) d = unfold_once(d);
    return d;
}

Diagram close_outputs(Diagram d) {
    auto const open = d.boundary_out();
    d.boundary_out().clear();
    for (auto const& r : open) {
        auto const& p = d.port(r);
        auto const dir = p.dir == PortDir::Out ? PortDir::In : PortDir::Out;
        auto const cap = d.add_spider({{p.type, dir}});
        d.connect(r, {cap, 0});
    }
    return d;
}

Diagram erase_swaps(Diagram d) {
    std::vector<NodeId> swaps;
    for (auto const& [id, n] : d.nodes())
        if (n.kind == NodeKind::Swap) swaps.push_back(id);
    for (auto id : swaps) erase_swap_at(d, id);
    return d;
}

Diagram normalize(Diagram d, RewriteOptions const& opts) {
    require_valid(d);
    check_self_loops(d);
    d = unfold_wraps(std::move(d));
    if (opts.check_each_step) require_valid(d);
    std::optional<std::mt19937_64> rng;
    if (opts.shuffle_seed) rng.emplace(*opts.shuffle_seed);
    for (std::size_t step = 0;; ++step) {
        if (step >= opts.max_steps) throw Error("normalize exceeded " + std::to_string(opts.max_steps) + " steps");
        auto steps = applicable(d, opts.mode, !rng);
        if (steps.empty()) break;
        auto const before = measure(d);
        auto const& pick = rng ? steps[std::uniform_int_distribution<std::size_t>(0, steps.size() - 1)(*rng)]
                               : steps.front();
        apply(d, pick);
        if (measure(d) >= before) throw Error("rewrite step did not decrease the termination measure");
        if (opts.check_each_step) require_valid(d);
    }
    require_valid(d);
    return d;
}

Diagram normalize(Diagram d, Mode mode) {
    RewriteOptions opts;
    opts.mode = mode;
    return normalize(std::move(d), opts);
}

}  // namespace gramwire
