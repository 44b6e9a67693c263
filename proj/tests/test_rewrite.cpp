#include <doctest.h>

#include "gramwire/equivalence.hpp"
#include "gramwire/error.hpp"
#include "support.hpp"

using namespace gramwire;

namespace {

TypeAtom const n("n", 0);

Port in(TypeAtom t) { return {std::move(t), PortDir::In}; }
Port out(TypeAtom t) { return {std::move(t), PortDir::Out}; }

/// Labels of the boxes around a spider, in leg order.
std::vector<std::string> leg_labels(Diagram const& d, NodeId spider) {
    std::vector<std::string> out;
    for (std::uint32_t p = 0; p < d.node(spider).ports.size(); ++p)
        out.push_back(d.node(d.partner({spider, p})->node).label);
    return out;
}

NodeId only(Diagram const& d, NodeKind kind) {
    for (auto const& [id, node] : d.nodes())
        if (node.kind == kind) return id;
    FAIL("no node of kind " << to_string(kind));
    return 0;
}

/// Two three-legged spiders joined leg 1 to leg 0, one box on every other leg.
Diagram spider_pair() {
    Diagram d;
    auto x = d.add_spider({in(n), out(n), in(n)});
    auto y = d.add_spider({in(n), in(n), in(n)});
    d.connect({x, 1}, {y, 0});
    for (auto [s, p, label] : {std::tuple{x, 0u, "a0"}, {x, 2u, "a2"}, {y, 1u, "b1"}, {y, 2u, "b2"}}) {
        auto b = d.add_content(label, {n});
        d.connect({b, 0}, {s, p});
    }
    return d;
}

}  // namespace

TEST_SUITE("rewrite") {
    TEST_CASE("fusion merges adjacent spiders") {
        auto const d = fuse_spiders(spider_pair(), Mode::Commutative);
        CHECK(d.count(NodeKind::Spider) == 1);
        CHECK(d.node(only(d, NodeKind::Spider)).ports.size() == 4);
        CHECK(validate(d).empty());
    }

    TEST_CASE("non-commutative fusion splices legs at the shared wire") {
        auto const d = fuse_spiders(spider_pair(), Mode::NonCommutative);
        CHECK(leg_labels(d, only(d, NodeKind::Spider)) == std::vector<std::string>{"a0", "b1", "b2", "a2"});
    }

    TEST_CASE("a spider wired to itself is refused") {
        Diagram d;
        auto s = d.add_spider({in(n), out(n)});
        d.connect({s, 0}, {s, 1});
        CHECK_THROWS_AS(fuse_spiders(d), DiagramError);
    }

    TEST_CASE("identity spiders collapse only into well-typed wires") {
        Diagram good;
        auto a = good.add_content("a", {n});
        auto b = good.add_content("b", {TypeAtom("n", 1)});
        auto s = good.add_spider({in(n), out(n)});
        good.connect({a, 0}, {s, 0});
        good.connect({s, 1}, {b, 0});
        auto const g = eliminate_identities(good);
        CHECK(g.count(NodeKind::Spider) == 0);
        REQUIRE(g.wires().size() == 1);
        CHECK(classify_wire(g, g.wires()[0]) == WireKind::Cup);

        Diagram bad;
        auto c = bad.add_content("c", {n});
        auto e = bad.add_content("e", {n});
        auto t = bad.add_spider({in(n), in(n)});
        bad.connect({c, 0}, {t, 0});
        bad.connect({e, 0}, {t, 1});
        CHECK(eliminate_identities(bad).count(NodeKind::Spider) == 1);
    }

    TEST_CASE("copying then deleting a branch leaves a plain wire") {
        Diagram d;
        auto a = d.add_content("a", {n});
        auto b = d.add_content("b", {TypeAtom("n", 1)});
        auto copy = d.add_spider({in(n), out(n), out(n)});
        auto del = d.add_spider({in(n)});
        d.connect({a, 0}, {copy, 0});
        d.connect({copy, 1}, {b, 0});
        d.connect({copy, 2}, {del, 0});
        for (auto mode : {Mode::Commutative, Mode::NonCommutative}) {
            auto const r = normalize(d, mode);
            CHECK(r.count(NodeKind::Spider) == 0);
            REQUIRE(r.wires().size() == 1);
            CHECK(classify_wire(r, r.wires()[0]) == WireKind::Cup);
        }
    }

    TEST_CASE("wrap followed by unwrap unfolds to plain wires") {
        Diagram d;
        auto a = d.add_content("a", {n});
        auto b = d.add_content("b", {TypeAtom("s", 0)});
        auto w = d.add_wrap({n, TypeAtom("s", 0)});
        auto u = d.add_unwrap({n, TypeAtom("s", 0)});
        d.connect({a, 0}, {w, 0});
        d.connect({b, 0}, {w, 1});
        d.connect({w, 2}, {u, 0});
        d.boundary_out() = {{u, 1}, {u, 2}};
        auto const f = unfold_wraps(d);
        CHECK(f.count(NodeKind::Wrap) == 0);
        CHECK(f.count(NodeKind::Unwrap) == 0);
        CHECK(f.boundary_out().size() == 2);
        auto const g = normalize(d);
        CHECK(g.count(NodeKind::Spider) == 0);
        CHECK(g.node(g.boundary_out()[0].node).label == "a");
        CHECK(g.node(g.boundary_out()[1].node).label == "b");
    }

    TEST_CASE("closing caps every output with a delete spider") {
        auto const d = sentence_diagram("Alice likes Claire", testing::demo_lexicon(), Stage::Wired);
        auto const c = close_outputs(d);
        CHECK(c.boundary_out().empty());
        CHECK(c.count(NodeKind::Spider) == d.count(NodeKind::Spider) + d.boundary_out().size());
        CHECK(validate(c).empty());
    }

    TEST_CASE("swaps survive only without commutativity") {
        auto const& lex = testing::demo_lexicon();
        auto const sentence = "Alice is bored by the class";
        PipelineOptions nc{Mode::NonCommutative, "s"};
        auto const closed = sentence_diagram(sentence, lex, Stage::Closed, nc);
        REQUIRE(closed.count(NodeKind::Swap) == 1);
        CHECK(normalize(closed, Mode::NonCommutative).count(NodeKind::Swap) == 1);
        CHECK(normalize(closed, Mode::Commutative).count(NodeKind::Swap) == 0);
        CHECK(erase_swaps(closed).count(NodeKind::Swap) == 0);
    }

    TEST_CASE("normal forms are fixpoints") {
        auto const& lex = testing::demo_lexicon();
        for (auto mode : {Mode::Commutative, Mode::NonCommutative})
            for (char const* sentence : {"Alice likes the flowers that Bob gives Claire", "Alice gently washes Fido",
                                         "author whose book entertained John"}) {
                PipelineOptions opts{mode, std::string(sentence).starts_with("author") ? "n" : "s"};
                auto const nf = sentence_diagram(sentence, lex, Stage::Normal, opts);
                CHECK(normalize(nf, mode) == nf);
                CHECK(nf.count(NodeKind::Wrap) == 0);
                CHECK(nf.count(NodeKind::Unwrap) == 0);
                for (auto const& w : nf.wires())
                    CHECK_FALSE((nf.node(w.a.node).kind == NodeKind::Spider &&
                                 nf.node(w.b.node).kind == NodeKind::Spider));
            }
    }

    TEST_CASE("shuffled rule orders reach the same normal form") {
        auto const& lex = testing::demo_lexicon();
        for (auto mode : {Mode::Commutative, Mode::NonCommutative}) {
            auto const closed = sentence_diagram("Bob gives Claire the flowers that Alice likes", lex, Stage::Closed,
                                                 {mode, "s"});
            auto const reference = canonicalize(normalize(closed, mode), mode).canonical;
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                RewriteOptions opts;
                opts.mode = mode;
                opts.shuffle_seed = seed;
                opts.check_each_step = true;
                CHECK(canonicalize(normalize(closed, opts), mode).canonical == reference);
            }
        }
    }

    TEST_CASE("step limit is enforced") {
        auto const closed = sentence_diagram("Alice likes Claire", testing::demo_lexicon(), Stage::Closed);
        RewriteOptions opts;
        opts.max_steps = 1;
        CHECK_THROWS_AS(normalize(closed, opts), Error);
    }

    TEST_CASE("mode names") {
        CHECK(mode_from_string("commutative") == Mode::Commutative);
        CHECK(mode_from_string("non-commutative") == Mode::NonCommutative);
        CHECK(mode_from_string(to_string(Mode::NonCommutative)) == Mode::NonCommutative);
        CHECK_FALSE(mode_from_string("cartesian"));
    }
}
