#include "gramwire/equivalence.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <regex>
#include <set>

#include "gramwire/error.hpp"

namespace gramwire {

namespace {

/// Index-based view of a diagram shared by canonicalization and the
/// isomorphism oracle.
struct LabeledGraph {
    struct End {
        int node;
        std::string label;
    };
    std::vector<std::string> desc;
    std::vector<std::pair<End, End>> edges;
    std::vector<End> boundary;
    /// Per node, leg tokens in cyclic order (non-commutative spiders only).
    /// Each token is {neighbor index or -1, label or boundary name}.
    std::vector<std::vector<std::pair<int, std::string>>> cycles;
    std::vector<bool> cyclic;
};

std::string port_label(Node const& n, std::uint32_t port) {
    if (n.kind == NodeKind::Spider) return "*";
    return "p" + std::to_string(port);
}

std::string descriptor(Node const& n) {
    std::string d = to_string(n.kind);
    switch (n.kind) {
        case NodeKind::Spider:
            d += " " + to_string(n.carrier) + " " + std::to_string(n.ports.size());
            break;
        default:
            d += " " + n.label;
            for (auto const& p : n.ports) d += " " + to_string(p.type) + (p.dir == PortDir::In ? "<" : ">");
            break;
    }
    return d;
}

LabeledGraph build_graph(Diagram const& d, Mode mode) {
    LabeledGraph g;
    std::map<NodeId, int> index;
    for (auto const& [id, n] : d.nodes()) {
        index[id] = static_cast<int>(g.desc.size());
        g.desc.push_back(descriptor(n));
        g.cyclic.push_back(mode == Mode::NonCommutative && n.kind == NodeKind::Spider);
    }
    for (auto const& w : d.wires())
        g.edges.push_back({{index.at(w.a.node), port_label(d.node(w.a.node), w.a.port)},
                           {index.at(w.b.node), port_label(d.node(w.b.node), w.b.port)}});
    std::map<PortRef, std::string> boundary_name;
    for (std::size_t i = 0; i < d.boundary_in().size(); ++i) {
        auto const& r = d.boundary_in()[i];
        g.boundary.push_back({index.at(r.node), "in:" + port_label(d.node(r.node), r.port)});
        boundary_name[r] = "I" + std::to_string(i);
    }
    for (std::size_t i = 0; i < d.boundary_out().size(); ++i) {
        auto const& r = d.boundary_out()[i];
        g.boundary.push_back({index.at(r.node), "out:" + port_label(d.node(r.node), r.port)});
        boundary_name[r] = "O" + std::to_string(i);
    }
    g.cycles.resize(g.desc.size());
    for (auto const& [id, n] : d.nodes()) {
        auto const v = index.at(id);
        if (!g.cyclic[v]) continue;
        for (std::uint32_t p = 0; p < n.ports.size(); ++p) {
            PortRef const r{id, p};
            if (auto other = d.partner(r)) {
                g.cycles[v].push_back({index.at(other->node), port_label(d.node(other->node), other->port)});
            } else if (boundary_name.contains(r)) {
                g.cycles[v].push_back({-1, boundary_name.at(r)});
            } else {
                g.cycles[v].push_back({-1, "?"});
            }
        }
    }
    return g;
}

std::vector<std::string> rotation_min(std::vector<std::string> seq) {
    if (seq.empty()) return seq;
    auto best = seq;
    for (std::size_t r = 1; r < seq.size(); ++r) {
        std::rotate(seq.begin(), seq.begin() + 1, seq.end());
        if (seq < best) best = seq;
    }
    return best;
}

class Canonizer {
public:
    Canonizer(LabeledGraph const& g, Mode mode) : g_(g), mode_(mode), n_(g.desc.size()) {
        adj_.resize(n_);
        for (auto const& [a, b] : g_.edges) {
            adj_[a.node].push_back({a.label, b.node, b.label});
            adj_[b.node].push_back({b.label, a.node, a.label});
        }
        for (std::size_t i = 0; i < g_.boundary.size(); ++i)
            bmarks_[g_.boundary[i].node].push_back(g_.boundary[i].label + "@" + std::to_string(i));
        edge_keys_ = edge_keys(identity());
        // Where each neighbor meets a cyclic spider, by leg position.
        seats_.resize(n_);
        for (std::size_t v = 0; v < n_; ++v)
            for (std::size_t i = 0; i < g_.cycles[v].size(); ++i)
                if (auto const u = g_.cycles[v][i].first; u >= 0) seats_[u].push_back({static_cast<int>(v), i});
    }

    std::string run() {
        std::vector<std::string> initial(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            initial[v] = g_.desc[v];
            auto const it = bmarks_.find(static_cast<int>(v));
            auto marks = it == bmarks_.end() ? std::vector<std::string>{} : it->second;
            std::sort(marks.begin(), marks.end());
            for (auto const& m : marks) initial[v] += " " + m;
        }
        search(rank(initial));
        return best_;
    }

    /// Graph vertex at each canonical position of the last `run`.
    std::vector<int> const& order() const { return best_order_; }

private:
    struct Adj {
        std::string mine;
        int other;
        std::string theirs;
    };

    static std::vector<int> rank(std::vector<std::string> const& sigs) {
        std::vector<std::string> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(sigs.size());
        for (std::size_t v = 0; v < sigs.size(); ++v)
            out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
        return out;
    }

    static std::size_t classes(std::vector<int> const& colors) {
        return std::set<int>(colors.begin(), colors.end()).size();
    }

    std::vector<int> refine(std::vector<int> colors) const {
        while (true) {
            std::vector<std::string> sigs(n_);
            for (std::size_t v = 0; v < n_; ++v) {
                std::vector<std::string> nb;
                for (auto const& a : adj_[v])
                    nb.push_back(a.mine + "," + std::to_string(colors[a.other]) + "," + a.theirs);
                // A cyclic spider sees its neighbors' colors in leg order,
                // and each neighbor sees the cycle read from its own seat.
                if (g_.cyclic[v]) nb.push_back("cycle " + cycle_colors(colors, static_cast<int>(v), 0, true));
                for (auto [spider, seat] : seats_[v])
                    nb.push_back("seat " + cycle_colors(colors, spider, seat, false));
                std::sort(nb.begin(), nb.end());
                auto& s = sigs[v];
                s = std::to_string(colors[v]);
                for (auto const& x : nb) s += "|" + x;
            }
            auto next = rank(sigs);
            if (classes(next) == classes(colors)) return next;
            colors = std::move(next);
        }
    }

    void search(std::vector<int> colors) {
        colors = refine(std::move(colors));
        std::map<int, std::vector<int>> cells;
        for (std::size_t v = 0; v < n_; ++v) cells[colors[v]].push_back(static_cast<int>(v));
        for (auto const& [c, members] : cells) {
            if (members.size() < 2) continue;
            std::vector<int> tried;
            for (auto v : members) {
                // Swapping two interchangeable vertices maps one subtree onto
                // the other, so only one of them needs exploring.
                if (std::any_of(tried.begin(), tried.end(), [&](int t) { return swap_is_automorphism(t, v); }))
                    continue;
                tried.push_back(v);
                std::vector<int> next(n_);
                for (std::size_t u = 0; u < n_; ++u) next[u] = 2 * colors[u] + 1;
                next[v] = 2 * colors[v];
                search(rank_ints(next));
            }
            return;
        }
        auto s = serialize(colors);
        if (!have_best_ || s < best_) {
            best_ = std::move(s);
            have_best_ = true;
            best_order_.assign(n_, 0);
            for (std::size_t v = 0; v < n_; ++v) best_order_[colors[v]] = static_cast<int>(v);
        }
    }

    std::vector<int> identity() const {
        std::vector<int> p(n_);
        for (std::size_t v = 0; v < n_; ++v) p[v] = static_cast<int>(v);
        return p;
    }

    using EdgeKey = std::pair<std::pair<int, std::string>, std::pair<int, std::string>>;

    std::vector<EdgeKey> edge_keys(std::vector<int> const& p) const {
        std::vector<EdgeKey> keys;
        for (auto const& [a, b] : g_.edges) {
            std::pair x{p[a.node], a.label}, y{p[b.node], b.label};
            if (y < x) std::swap(x, y);
            keys.push_back({x, y});
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    /// Colors around a cyclic spider starting at leg `from`. With `canonical`
    /// the least rotation is used instead.
    std::string cycle_colors(std::vector<int> const& colors, int spider, std::size_t from, bool canonical) const {
        auto const& cyc = g_.cycles[spider];
        std::vector<std::string> seq;
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            auto const& [nb, label] = cyc[(from + k) % cyc.size()];
            seq.push_back(nb < 0 ? label : std::to_string(colors[nb]) + "." + label);
        }
        if (canonical) seq = rotation_min(seq);
        std::string out;
        for (auto const& x : seq) out += x + " ";
        return out;
    }

    bool swap_is_automorphism(int t, int v) const {
        if (g_.desc[t] != g_.desc[v] || g_.cyclic[t] != g_.cyclic[v]) return false;
        if (bmarks_.contains(t) || bmarks_.contains(v)) return false;
        auto p = identity();
        std::swap(p[t], p[v]);
        if (edge_keys(p) != edge_keys_) return false;
        for (std::size_t u = 0; u < n_; ++u) {
            if (!g_.cyclic[u]) continue;
            std::vector<std::pair<int, std::string>> mapped;
            for (auto const& [nb, label] : g_.cycles[u]) mapped.push_back({nb < 0 ? nb : p[nb], label});
            auto const& target = g_.cycles[p[u]];
            if (mapped.size() != target.size()) return false;
            bool rotation = mapped.empty();
            for (std::size_t r = 0; r < mapped.size() && !rotation; ++r)
                rotation = std::equal(mapped.begin(), mapped.end() - static_cast<std::ptrdiff_t>(r),
                                      target.begin() + static_cast<std::ptrdiff_t>(r)) &&
                           std::equal(mapped.end() - static_cast<std::ptrdiff_t>(r), mapped.end(), target.begin());
            if (!rotation) return false;
        }
        return true;
    }

    static std::vector<int> rank_ints(std::vector<int> const& v) {
        std::vector<std::string> s;
        for (auto x : v) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%010d", x);
            s.emplace_back(buf);
        }
        return rank(s);
    }

    std::string serialize(std::vector<int> const& pos) const {
        std::vector<int> order(n_);
        for (std::size_t v = 0; v < n_; ++v) order[pos[v]] = static_cast<int>(v);
        std::string out = std::string("mode ") + to_string(mode_) + "\n";
        for (std::size_t i = 0; i < n_; ++i) out += "node " + std::to_string(i) + " " + g_.desc[order[i]] + "\n";
        auto end = [&](LabeledGraph::End const& e) { return std::to_string(pos[e.node]) + "." + e.label; };
        std::vector<std::string> edges;
        for (auto const& [a, b] : g_.edges) {
            auto x = end(a), y = end(b);
            if (y < x) std::swap(x, y);
            edges.push_back("wire " + x + " " + y);
        }
        std::sort(edges.begin(), edges.end());
        for (auto const& e : edges) out += e + "\n";
        for (std::size_t i = 0; i < n_; ++i) {
            auto const v = order[i];
            if (!g_.cyclic[v]) continue;
            std::vector<std::string> legs;
            for (auto const& [nb, label] : g_.cycles[v])
                legs.push_back(nb < 0 ? label : std::to_string(pos[nb]) + "." + label);
            out += "legs " + std::to_string(i);
            for (auto const& l : rotation_min(legs)) out += " " + l;
            out += "\n";
        }
        for (std::size_t i = 0; i < g_.boundary.size(); ++i)
            out += "boundary " + std::to_string(i) + " " + end(g_.boundary[i]) + "\n";
        return out;
    }

    LabeledGraph const& g_;
    Mode mode_;
    std::size_t n_;
    std::vector<std::vector<Adj>> adj_;
    std::map<int, std::vector<std::string>> bmarks_;
    std::vector<EdgeKey> edge_keys_;
    std::vector<std::vector<std::pair<int, std::size_t>>> seats_;
    std::string best_;
    std::vector<int> best_order_;
    bool have_best_ = false;
};

}  // namespace

std::string NormalForm::hash() const {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

NormalForm canonicalize(Diagram const& d, Mode mode) {
    auto const g = build_graph(d, mode);
    NormalForm nf;
    nf.diagram = d;
    nf.mode = mode;
    Canonizer c(g, mode);
    nf.canonical = c.run();
    std::vector<NodeId> ids;
    for (auto const& [id, n] : d.nodes()) ids.push_back(id);
    for (auto v : c.order()) nf.canonical_order.push_back(ids[v]);
    return nf;
}

NormalForm normal_form(std::string const& sentence, Lexicon const& lex, PipelineOptions const& opts) {
    return canonicalize(sentence_diagram(sentence, lex, Stage::Normal, opts), opts.mode);
}

namespace {

std::string line_at(std::string const& s, std::size_t i) {
    if (i >= s.size()) return "<end>";
    auto const start = i == 0 ? 0 : s.rfind('\n', i - 1);
    auto const from = start == std::string::npos || i == 0 ? 0 : start + 1;
    return s.substr(from, s.find('\n', i) - from);
}

/// Canonical positions mentioned by one serialization line, as node ids.
std::string nodes_in(std::string const& line, NormalForm const& nf) {
    static std::regex const head(R"(^(node|legs) (\d+))");
    static std::regex const end(R"((\d+)\.)");
    std::set<std::size_t> positions;
    std::smatch m;
    if (std::regex_search(line, m, head)) positions.insert(std::stoul(m[2]));
    for (auto it = std::sregex_iterator(line.begin(), line.end(), end); it != std::sregex_iterator(); ++it)
        positions.insert(std::stoul((*it)[1]));
    std::string out;
    for (auto p : positions) {
        if (p >= nf.canonical_order.size()) continue;
        auto const id = nf.canonical_order[p];
        out += (out.empty() ? "" : ", ") + std::to_string(id) + " (" + nf.diagram.node(id).label + ")";
    }
    return out.empty() ? "none" : out;
}

std::string describe_difference(NormalForm const& a, NormalForm const& b) {
    std::size_t i = 0;
    while (i < a.canonical.size() && i < b.canonical.size() && a.canonical[i] == b.canonical[i]) ++i;
    auto const la = line_at(a.canonical, i);
    auto const lb = line_at(b.canonical, i);
    return "byte " + std::to_string(i) + ": \"" + la + "\" vs \"" + lb + "\"; first nodes " + nodes_in(la, a) +
           "; second nodes " + nodes_in(lb, b);
}

}  // namespace

EquivalenceVerdict compare(std::string const& s1, std::string const& s2, Lexicon const& lex,
                           PipelineOptions const& opts) {
    EquivalenceVerdict v;
    v.first = normal_form(s1, lex, opts);
    v.second = normal_form(s2, lex, opts);
    v.equivalent = v.first.canonical == v.second.canonical;
    if (!v.equivalent) v.witness = describe_difference(v.first, v.second);
    return v;
}

bool equivalent(std::string const& s1, std::string const& s2, Lexicon const& lex, PipelineOptions const& opts) {
    return compare(s1, s2, lex, opts).equivalent;
}

namespace {

class IsoSearch {
public:
    IsoSearch(LabeledGraph const& a, LabeledGraph const& b) : a_(a), b_(b), n_(a.desc.size()) {
        index(a_, ea_);
        index(b_, eb_);
    }

    bool run() {
        if (a_.desc.size() != b_.desc.size() || a_.edges.size() != b_.edges.size() ||
            a_.boundary.size() != b_.boundary.size())
            return false;
        map_.assign(n_, -1);
        used_.assign(n_, false);
        return extend(0);
    }

private:
    using EdgeKey = std::pair<int, int>;
    using EdgeLabels = std::multiset<std::pair<std::string, std::string>>;

    static void index(LabeledGraph const& g, std::map<EdgeKey, EdgeLabels>& out) {
        for (auto const& [x, y] : g.edges) {
            out[{x.node, y.node}].insert({x.label, y.label});
            if (x.node != y.node) out[{y.node, x.node}].insert({y.label, x.label});
        }
    }

    static EdgeLabels labels(std::map<EdgeKey, EdgeLabels> const& m, int u, int v) {
        auto it = m.find({u, v});
        return it == m.end() ? EdgeLabels{} : it->second;
    }

    bool consistent(int u) const {
        for (std::size_t w = 0; w < n_; ++w) {
            if (map_[w] < 0) continue;
            if (labels(ea_, u, static_cast<int>(w)) != labels(eb_, map_[u], map_[w])) return false;
        }
        return true;
    }

    bool extend(std::size_t u) {
        if (u == n_) return finish();
        for (std::size_t v = 0; v < n_; ++v) {
            if (used_[v] || a_.desc[u] != b_.desc[v] || a_.cyclic[u] != b_.cyclic[v]) continue;
            map_[u] = static_cast<int>(v);
            used_[v] = true;
            if (consistent(static_cast<int>(u)) && extend(u + 1)) return true;
            map_[u] = -1;
            used_[v] = false;
        }
        return false;
    }

    bool finish() const {
        for (std::size_t i = 0; i < a_.boundary.size(); ++i)
            if (map_[a_.boundary[i].node] != b_.boundary[i].node || a_.boundary[i].label != b_.boundary[i].label)
                return false;
        for (std::size_t u = 0; u < n_; ++u) {
            if (!a_.cyclic[u]) continue;
            auto const& ca = a_.cycles[u];
            auto const& cb = b_.cycles[map_[u]];
            if (ca.size() != cb.size()) return false;
            bool any = ca.empty();
            for (std::size_t r = 0; r < cb.size() && !any; ++r) {
                bool ok = true;
                for (std::size_t k = 0; k < ca.size() && ok; ++k) {
                    auto const& x = ca[k];
                    auto const& y = cb[(k + r) % cb.size()];
                    ok = x.second == y.second && (x.first < 0 ? y.first < 0 : y.first == map_[x.first]);
                }
                any = ok;
            }
            if (!any) return false;
        }
        return true;
    }

    LabeledGraph const& a_;
    LabeledGraph const& b_;
    std::size_t n_;
    std::map<EdgeKey, EdgeLabels> ea_, eb_;
    std::vector<int> map_;
    std::vector<bool> used_;
};

}  // namespace

bool isomorphic(Diagram const& a, Diagram const& b, Mode mode) {
    if (a.nodes().size() + b.nodes().size() > kMaxIsomorphismNodes)
        throw Error("isomorphism oracle is limited to " + std::to_string(kMaxIsomorphismNodes) + " nodes in total");
    auto const ga = build_graph(a, mode);
    auto const gb = build_graph(b, mode);
    return IsoSearch(ga, gb).run();
}

bool isomorphic(NormalForm const& a, NormalForm const& b) {
    if (a.mode != b.mode) return false;
    return isomorphic(a.diagram, b.diagram, a.mode);
}

}  // namespace gramwire
