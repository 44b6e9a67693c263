#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "gramwire/diagram.hpp"
#include "gramwire/error.hpp"

namespace gramwire {

using nlohmann::json;

namespace {

// Endpoint order carries no meaning, so exports list the lower end first.
std::vector<Wire> sorted_wires(Diagram const& d) {
    auto w = d.wires();
    for (auto& x : w)
        if (x.b < x.a) std::swap(x.a, x.b);
    std::sort(w.begin(), w.end());
    return w;
}

std::string dot_escape(std::string const& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string export_dot(Diagram const& d) {
    require_valid(d);
    std::ostringstream os;
    os << "graph diagram {\n";
    for (auto const& [id, n] : d.nodes()) {
        auto shape = n.kind == NodeKind::Spider ? "circle" : n.kind == NodeKind::Swap ? "diamond" : "box";
        os << "  n" << id << " [label=\"" << dot_escape(n.label) << ":" << to_string(n.kind) << "\", shape=" << shape
           << "];\n";
    }
    for (auto const& w : sorted_wires(d)) {
        auto const ta = to_string(d.port(w.a).type);
        auto const tb = to_string(d.port(w.b).type);
        os << "  n" << w.a.node << " -- n" << w.b.node << " [label=\"" << dot_escape(ta == tb ? ta : ta + " | " + tb)
           << "\", taillabel=\"" << w.a.port << "\", headlabel=\"" << w.b.port << "\"];\n";
    }
    auto emit_boundary = [&](std::vector<PortRef> const& ports, char const* prefix) {
        for (std::size_t i = 0; i < ports.size(); ++i) {
            os << "  " << prefix << i << " [shape=point];\n";
            os << "  n" << ports[i].node << " -- " << prefix << i << " [label=\""
               << dot_escape(to_string(d.port(ports[i]).type)) << "\", taillabel=\"" << ports[i].port << "\"];\n";
        }
    };
    emit_boundary(d.boundary_in(), "in");
    emit_boundary(d.boundary_out(), "out");
    os << "}\n";
    return os.str();
}

std::string export_text(Diagram const& d) {
    require_valid(d);
    std::ostringstream os;
    for (auto const& [id, n] : d.nodes()) {
        os << "node " << id << " " << to_string(n.kind);
        if (!n.label.empty()) os << " \"" << n.label << "\"";
        os << " :";
        for (auto const& p : n.ports) os << " " << (p.dir == PortDir::In ? "in " : "out ") << to_string(p.type);
        os << "\n";
    }
    for (auto const& w : sorted_wires(d))
        os << "wire " << to_string(w.a) << " " << to_string(w.b) << " : " << to_string(d.port(w.a).type) << "\n";
    for (auto const& r : d.boundary_in()) os << "in " << to_string(r) << "\n";
    for (auto const& r : d.boundary_out()) os << "out " << to_string(r) << "\n";
    return os.str();
}

std::string export_json(Diagram const& d) {
    require_valid(d);
    json doc;
    doc["nodes"] = json::array();
    for (auto const& [id, n] : d.nodes()) {
        json jn;
        jn["id"] = id;
        jn["kind"] = to_string(n.kind);
        jn["label"] = n.label;
        jn["ports"] = json::array();
        for (auto const& p : n.ports)
            jn["ports"].push_back({{"type", to_string(p.type)}, {"dir", p.dir == PortDir::In ? "in" : "out"}});
        if (n.kind == NodeKind::Spider) {
            jn["carrier"] = to_string(n.carrier);
            json order = json::array();
            for (std::size_t i = 0; i < n.ports.size(); ++i) order.push_back(i);
            jn["legOrder"] = order;
        } else {
            jn["legOrder"] = nullptr;
        }
        if (!n.word_class.empty()) jn["class"] = n.word_class;
        if (!n.lemma.empty()) jn["lemma"] = n.lemma;
        doc["nodes"].push_back(jn);
    }
    doc["wires"] = json::array();
    for (auto const& w : sorted_wires(d)) doc["wires"].push_back({to_string(w.a), to_string(w.b)});
    auto refs = [](std::vector<PortRef> const& v) {
        json a = json::array();
        for (auto const& r : v) a.push_back(to_string(r));
        return a;
    };
    doc["boundaryIn"] = refs(d.boundary_in());
    doc["boundaryOut"] = refs(d.boundary_out());
    return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void schema_error(std::string const& path, std::string const& what) {
    throw SyntaxError("schema violation at " + path + ": " + what, 0);
}

json const& field(json const& obj, char const* key, std::string const& path) {
    if (!obj.is_object() || !obj.contains(key)) schema_error(path, std::string("missing \"") + key + "\"");
    return obj.at(key);
}

std::string string_field(json const& obj, char const* key, std::string const& path) {
    auto const& v = field(obj, key, path);
    if (!v.is_string()) schema_error(path + "." + key, "expected a string");
    return v.get<std::string>();
}

PortRef parse_ref(json const& v, std::string const& path) {
    if (!v.is_string()) schema_error(path, "expected \"node:port\"");
    auto const s = v.get<std::string>();
    auto const colon = s.find(':');
    if (colon == std::string::npos) schema_error(path, "expected \"node:port\"");
    PortRef r;
    auto parse = [&](std::string_view part, std::uint32_t& out) {
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        if (ec != std::errc() || p != part.data() + part.size() || part.empty()) schema_error(path, "bad port reference");
    };
    std::string_view sv(s);
    parse(sv.substr(0, colon), r.node);
    parse(sv.substr(colon + 1), r.port);
    return r;
}

TypeAtom parse_wire_type(std::string const& text, std::string const& path) {
    try {
        return parse_atom(text);
    } catch (SyntaxError const& e) {
        schema_error(path, e.what());
    }
}

}  // namespace

Diagram import_json(std::string const& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const& e) {
        throw SyntaxError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) schema_error("$", "expected an object");
    Diagram d;
    auto const& nodes = field(doc, "nodes", "$");
    if (!nodes.is_array()) schema_error("$.nodes", "expected an array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto const path = "$.nodes[" + std::to_string(i) + "]";
        auto const& jn = nodes[i];
        Node n;
        auto const& id = field(jn, "id", path);
        if (!id.is_number_unsigned()) schema_error(path + ".id", "expected a non-negative integer");
        n.id = id.get<NodeId>();
        auto const kind = node_kind_from_string(string_field(jn, "kind", path));
        if (!kind) schema_error(path + ".kind", "unknown node kind");
        n.kind = *kind;
        n.label = string_field(jn, "label", path);
        auto const& ports = field(jn, "ports", path);
        if (!ports.is_array()) schema_error(path + ".ports", "expected an array");
        for (std::size_t p = 0; p < ports.size(); ++p) {
            auto const ppath = path + ".ports[" + std::to_string(p) + "]";
            auto const dir = string_field(ports[p], "dir", ppath);
            if (dir != "in" && dir != "out") schema_error(ppath + ".dir", "expected \"in\" or \"out\"");
            n.ports.push_back({parse_wire_type(string_field(ports[p], "type", ppath), ppath + ".type"),
                               dir == "in" ? PortDir::In : PortDir::Out});
        }
        if (n.kind == NodeKind::Spider) {
            if (jn.contains("carrier")) n.carrier = parse_wire_type(string_field(jn, "carrier", path), path + ".carrier");
            else if (!n.ports.empty()) n.carrier = strip_exponents(n.ports.front().type);
            else schema_error(path, "spider without legs needs a carrier");
            if (jn.contains("legOrder") && jn["legOrder"].is_array()) {
                auto const& order = jn["legOrder"];
                if (order.size() != n.ports.size()) schema_error(path + ".legOrder", "length differs from ports");
                std::vector<Port> legs;
                std::vector<bool> used(n.ports.size(), false);
                for (auto const& o : order) {
                    if (!o.is_number_unsigned() || o.get<std::size_t>() >= n.ports.size() || used[o.get<std::size_t>()])
                        schema_error(path + ".legOrder", "not a permutation");
                    used[o.get<std::size_t>()] = true;
                    legs.push_back(n.ports[o.get<std::size_t>()]);
                }
                n.ports = std::move(legs);
            }
        }
        if (jn.contains("class")) n.word_class = string_field(jn, "class", path);
        if (jn.contains("lemma")) n.lemma = string_field(jn, "lemma", path);
        try {
            d.insert_node(std::move(n));
        } catch (DiagramError const& e) {
            schema_error(path + ".id", e.what());
        }
    }
    auto const& wires = field(doc, "wires", "$");
    if (!wires.is_array()) schema_error("$.wires", "expected an array");
    for (std::size_t i = 0; i < wires.size(); ++i) {
        auto const path = "$.wires[" + std::to_string(i) + "]";
        if (!wires[i].is_array() || wires[i].size() != 2) schema_error(path, "expected a pair");
        Wire w{parse_ref(wires[i][0], path + "[0]"), parse_ref(wires[i][1], path + "[1]")};
        try {
            d.connect(w.a, w.b);
        } catch (DiagramError const& e) {
            schema_error(path, e.what());
        }
    }
    for (auto [key, target] : {std::pair{"boundaryIn", &d.boundary_in()}, std::pair{"boundaryOut", &d.boundary_out()}}) {
        auto const path = std::string("$.") + key;
        auto const& arr = field(doc, key, "$");
        if (!arr.is_array()) schema_error(path, "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) target->push_back(parse_ref(arr[i], path + "[" + std::to_string(i) + "]"));
    }
    require_valid(d);
    return d;
}

}  // namespace gramwire
