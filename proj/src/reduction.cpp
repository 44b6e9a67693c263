#include "gramwire/reduction.hpp"

#include <algorithm>
#include <set>

#include "gramwire/error.hpp"

namespace gramwire {

std::vector<TypeAtom> TypedSentence::units() const {
    std::vector<TypeAtom> out;
    for (auto const& tok : tokens) out.insert(out.end(), tok.type.atoms.begin(), tok.type.atoms.end());
    return out;
}

std::vector<std::size_t> TypedSentence::unit_owners() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) out.insert(out.end(), tokens[i].type.atoms.size(), i);
    return out;
}

std::optional<std::int64_t> sentence_bundle_exponent(TypeAtom const& t) {
    if (!t.is_wrap()) return std::nullopt;
    std::optional<std::int64_t> e;
    for (auto const& p : t.parts) {
        if (!p.is_simple()) return std::nullopt;
        if (e && *e != p.simple.exponent) return std::nullopt;
        e = p.simple.exponent;
    }
    return e;
}

namespace {

/// Exponent of `t` viewed as a sentence, if it is one.
std::optional<std::int64_t> as_sentence(TypeAtom const& t, ReductionOptions const& opts) {
    if (t.is_simple()) {
        if (t.simple.base == opts.sentence_base) return t.simple.exponent;
        return std::nullopt;
    }
    return sentence_bundle_exponent(t);
}

void collect_bases(TypeAtom const& t, std::set<std::string>& out) {
    if (t.is_simple()) {
        out.insert(t.simple.base);
        return;
    }
    for (auto const& p : t.parts) collect_bases(p, out);
}

void check_target(std::vector<TypeAtom> const& units, std::string const& target,
                  ReductionOptions const& opts) {
    std::set<std::string> alphabet(opts.alphabet.begin(), opts.alphabet.end());
    if (alphabet.empty()) {
        for (auto const& u : units) collect_bases(u, alphabet);
        alphabet.insert(opts.sentence_base);
    }
    if (!alphabet.contains(target)) throw Error("unknown target type '" + target + "'");
}

}  // namespace

bool units_contract(TypeAtom const& a, TypeAtom const& b, ReductionOptions const& opts) {
    if (contracts(a, b)) return true;
    // A sentence slot against a noun bundle (either side may be the slot).
    bool const a_slot = a.is_simple() && a.simple.base == opts.sentence_base;
    bool const b_slot = b.is_simple() && b.simple.base == opts.sentence_base;
    if (a_slot == b_slot) return false;
    auto const ea = as_sentence(a, opts);
    auto const eb = as_sentence(b, opts);
    return ea && eb && *eb == *ea + 1;
}

bool is_target_unit(TypeAtom const& u, std::string const& target, ReductionOptions const& opts) {
    if (u.is_simple()) return u.simple.base == target && u.simple.exponent == 0;
    if (target != opts.sentence_base) return false;
    auto const e = sentence_bundle_exponent(u);
    return e && *e == 0;
}

std::optional<Reduction> reduce_units(std::vector<TypeAtom> const& units, std::string const& target,
                                      ReductionOptions const& opts) {
    check_target(units, target, opts);
    auto const m = units.size();
    if (m == 0) return std::nullopt;

    // nullable[i][j] covers the half-open interval [i, j).
    std::vector<std::vector<char>> nullable(m + 1, std::vector<char>(m + 1, 0));
    std::vector<std::vector<char>> link(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) link[i][j] = units_contract(units[i], units[j], opts);
    for (std::size_t i = 0; i <= m; ++i) nullable[i][i] = 1;
    for (std::size_t len = 2; len <= m; len += 2) {
        for (std::size_t i = 0; i + len <= m; ++i) {
            auto const j = i + len;
            for (std::size_t k = i + 1; k < j; k += 2) {
                if (link[i][k] && nullable[i + 1][k] && nullable[k + 1][j]) {
                    nullable[i][j] = 1;
                    break;
                }
            }
        }
    }

    std::optional<std::size_t> residual;
    for (std::size_t k = 0; k < m; ++k) {
        if (nullable[0][k] && nullable[k + 1][m] && is_target_unit(units[k], target, opts)) {
            residual = k;
            break;
        }
    }
    if (!residual) return std::nullopt;

    Reduction r;
    r.residual.push_back(*residual);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, *residual}, {*residual + 1, m}};
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        if (i == j) continue;
        for (std::size_t k = i + 1; k < j; k += 2) {
            if (link[i][k] && nullable[i + 1][k] && nullable[k + 1][j]) {
                r.links.push_back({i, k});
                stack.push_back({i + 1, k});
                stack.push_back({k + 1, j});
                break;
            }
        }
    }
    std::sort(r.links.begin(), r.links.end());
    return r;
}

std::optional<Reduction> reduce_to(TypedSentence const& s, std::string const& target,
                                   ReductionOptions const& opts) {
    return reduce_units(s.units(), target, opts);
}

bool is_grammatical(TypedSentence const& s, std::string const& target, ReductionOptions const& opts) {
    return reduce_to(s, target, opts).has_value();
}

std::vector<std::string> validate_reduction(std::vector<TypeAtom> const& units, Reduction const& r,
                                            std::string const& target, ReductionOptions const& opts) {
    std::vector<std::string> out;
    std::vector<int> seen(units.size(), 0);
    auto mark = [&](std::size_t i) {
        if (i >= units.size()) {
            out.push_back("index " + std::to_string(i) + " out of range");
            return;
        }
        ++seen[i];
    };
    for (auto const& l : r.links) {
        mark(l.left);
        mark(l.right);
        auto const text = "(" + std::to_string(l.left) + "," + std::to_string(l.right) + ")";
        if (l.left >= l.right) out.push_back("link " + text + " is not left < right");
        else if (l.right < units.size() && !units_contract(units[l.left], units[l.right], opts))
            out.push_back("link " + text + " does not contract");
    }
    for (auto i : r.residual) mark(i);
    for (std::size_t i = 0; i < units.size(); ++i)
        if (seen[i] != 1) out.push_back("index " + std::to_string(i) + " covered " + std::to_string(seen[i]) + " times");
    for (std::size_t a = 0; a < r.links.size(); ++a) {
        for (std::size_t b = 0; b < r.links.size(); ++b) {
            auto const& x = r.links[a];
            auto const& y = r.links[b];
            if (x.left < y.left && y.left < x.right && x.right < y.right)
                out.push_back("links cross");
        }
    }
    // The output wire must reach the top of the diagram.
    for (auto i : r.residual)
        for (auto const& l : r.links)
            if (l.left < i && i < l.right) out.push_back("residual " + std::to_string(i) + " is under a link");
    if (r.residual.size() != 1) out.push_back("residual must be a single unit");
    else if (!target.empty() && r.residual[0] < units.size() && !is_target_unit(units[r.residual[0]], target, opts))
        out.push_back("residual is not the target type");
    return out;
}

namespace {

struct Enumerator {
    std::vector<TypeAtom> const& units;
    std::string const& target;
    ReductionOptions const& opts;
    std::vector<int> partner;  // -1 unassigned, -2 residual
    std::vector<Reduction> found;

    void run(std::size_t i, bool residual_used) {
        while (i < units.size() && partner[i] != -1) ++i;
        if (i == units.size()) {
            if (residual_used) accept();
            return;
        }
        if (!residual_used) {
            partner[i] = -2;
            run(i + 1, true);
            partner[i] = -1;
        }
        for (std::size_t j = i + 1; j < units.size(); ++j) {
            if (partner[j] != -1) continue;
            partner[i] = static_cast<int>(j);
            partner[j] = static_cast<int>(i);
            run(i + 1, residual_used);
            partner[i] = partner[j] = -1;
        }
    }

    void accept() {
        Reduction r;
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (partner[i] == -2) r.residual.push_back(i);
            else if (static_cast<std::size_t>(partner[i]) > i) r.links.push_back({i, static_cast<std::size_t>(partner[i])});
        }
        if (validate_reduction(units, r, target, opts).empty()) found.push_back(std::move(r));
    }
};

}  // namespace

std::vector<Reduction> enumerate_reductions(std::vector<TypeAtom> const& units, std::string const& target,
                                            ReductionOptions const& opts) {
    if (units.size() > kMaxEnumerationLength)
        throw Error("enumerate_reductions supports at most " + std::to_string(kMaxEnumerationLength) + " units");
    check_target(units, target, opts);
    Enumerator e{units, target, opts, std::vector<int>(units.size(), -1), {}};
    e.run(0, false);
    std::sort(e.found.begin(), e.found.end(), [](Reduction const& a, Reduction const& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        return a.links < b.links;
    });
    return e.found;
}

std::string links_to_string(Reduction const& r) {
    std::string out;
    for (auto const& l : r.links) {
        if (!out.empty()) out += ' ';
        out += "(" + std::to_string(l.left) + "," + std::to_string(l.right) + ")";
    }
    return out;
}

}  // namespace gramwire
