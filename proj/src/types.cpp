#include "gramwire/types.hpp"

#include <algorithm>
#include <charconv>

#include "gramwire/error.hpp"

namespace gramwire {

TypeAtom TypeAtom::wrap(std::vector<TypeAtom> parts) {
    if (parts.empty()) throw Error("wrap bundles must be nonempty");
    TypeAtom t;
    t.wrapped = true;
    t.parts = std::move(parts);
    return t;
}

bool TypeAtom::operator==(TypeAtom const& other) const {
    if (wrapped != other.wrapped) return false;
    return wrapped ? parts == other.parts : simple == other.simple;
}

bool TypeAtom::operator<(TypeAtom const& other) const {
    if (wrapped != other.wrapped) return !wrapped;
    if (!wrapped) return simple < other.simple;
    return std::lexicographical_compare(parts.begin(), parts.end(), other.parts.begin(),
                                        other.parts.end());
}

namespace {

TypeAtom shift(TypeAtom const& t, std::int64_t by) {
    if (t.is_simple()) return TypeAtom(t.simple.base, t.simple.exponent + by);
    std::vector<TypeAtom> parts;
    parts.reserve(t.parts.size());
    for (auto it = t.parts.rbegin(); it != t.parts.rend(); ++it) parts.push_back(shift(*it, by));
    return TypeAtom::wrap(std::move(parts));
}

void flatten_into(TypeAtom const& t, std::vector<SimpleType>& out) {
    if (t.is_simple()) {
        out.push_back(t.simple);
        return;
    }
    for (auto const& p : t.parts) flatten_into(p, out);
}

}  // namespace

TypeAtom left_adjoint(TypeAtom const& t) { return shift(t, -1); }
TypeAtom right_adjoint(TypeAtom const& t) { return shift(t, +1); }

PregroupType left_adjoint(PregroupType const& t) {
    PregroupType r;
    for (auto it = t.atoms.rbegin(); it != t.atoms.rend(); ++it) r.atoms.push_back(left_adjoint(*it));
    return r;
}

PregroupType right_adjoint(PregroupType const& t) {
    PregroupType r;
    for (auto it = t.atoms.rbegin(); it != t.atoms.rend(); ++it) r.atoms.push_back(right_adjoint(*it));
    return r;
}

bool contracts(SimpleType const& a, SimpleType const& b) {
    return a.base == b.base && b.exponent == a.exponent + 1;
}

bool contracts(TypeAtom const& a, TypeAtom const& b) {
    if (a.is_simple() && b.is_simple()) return contracts(a.simple, b.simple);
    if (a.is_wrap() && b.is_wrap()) return b == right_adjoint(a);
    return false;
}

std::vector<SimpleType> flatten(PregroupType const& t) {
    std::vector<SimpleType> out;
    for (auto const& a : t.atoms) flatten_into(a, out);
    return out;
}

std::vector<SimpleType> flatten(TypeAtom const& t) {
    std::vector<SimpleType> out;
    flatten_into(t, out);
    return out;
}

std::size_t leaf_count(TypeAtom const& t) {
    if (t.is_simple()) return 1;
    std::size_t n = 0;
    for (auto const& p : t.parts) n += leaf_count(p);
    return n;
}

TypeAtom strip_exponents(TypeAtom const& t) {
    if (t.is_simple()) return TypeAtom(t.simple.base, 0);
    std::vector<TypeAtom> parts;
    for (auto const& p : t.parts) parts.push_back(strip_exponents(p));
    return TypeAtom::wrap(std::move(parts));
}

namespace {

bool same_shape_oriented(TypeAtom const& a, TypeAtom const& b, bool reversed) {
    if (a.is_simple() != b.is_simple()) return false;
    if (a.is_simple()) return a.simple.base == b.simple.base;
    if (a.parts.size() != b.parts.size()) return false;
    auto const n = a.parts.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto const& bp = reversed ? b.parts[n - 1 - i] : b.parts[i];
        if (!same_shape_oriented(a.parts[i], bp, reversed)) return false;
    }
    return true;
}

}  // namespace

bool same_shape(TypeAtom const& a, TypeAtom const& b) {
    return same_shape_oriented(a, b, false) || same_shape_oriented(a, b, true);
}

bool is_valid_base(std::string_view name) {
    if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    });
}

namespace {

class TypeParser {
public:
    explicit TypeParser(std::string_view text) : text_(text) {}

    PregroupType parse_all() {
        PregroupType t;
        if (text_.empty()) return t;
        t.atoms = parse_atoms(false);
        if (pos_ != text_.size()) fail("unexpected character");
        return t;
    }

private:
    std::vector<TypeAtom> parse_atoms(bool in_bracket) {
        std::vector<TypeAtom> atoms;
        while (true) {
            atoms.push_back(parse_one());
            if (pos_ == text_.size()) break;
            if (text_[pos_] == ']') {
                if (!in_bracket) fail("unbalanced ']'");
                break;
            }
            if (text_[pos_] != ' ') fail("expected a single space between atoms");
            ++pos_;
        }
        return atoms;
    }

    TypeAtom parse_one() {
        if (pos_ == text_.size()) fail("expected an atom");
        if (text_[pos_] == '[') {
            ++pos_;
            if (pos_ < text_.size() && text_[pos_] == ']') fail("empty bracket");
            auto parts = parse_atoms(true);
            if (pos_ == text_.size() || text_[pos_] != ']') fail("missing ']'");
            ++pos_;
            return TypeAtom::wrap(std::move(parts));
        }
        auto const start = pos_;
        if (text_[pos_] < 'a' || text_[pos_] > 'z') fail("expected a lowercase base name");
        while (pos_ < text_.size() &&
               ((text_[pos_] >= 'a' && text_[pos_] <= 'z') || (text_[pos_] >= '0' && text_[pos_] <= '9')))
            ++pos_;
        std::string base(text_.substr(start, pos_ - start));
        std::int64_t exponent = 0;
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            auto const num_start = pos_;
            if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
            auto const digits_start = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
            if (pos_ == digits_start) fail("expected digits after '^'");
            auto const* first = text_.data() + num_start;
            auto const* last = text_.data() + pos_;
            auto [ptr, ec] = std::from_chars(first, last, exponent);
            if (ec != std::errc() || ptr != last) {
                pos_ = num_start;
                fail("exponent out of range");
            }
        }
        return TypeAtom(std::move(base), exponent);
    }

    [[noreturn]] void fail(std::string const& what) const { throw SyntaxError(what, pos_); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

PregroupType parse_type(std::string_view text) { return TypeParser(text).parse_all(); }

TypeAtom parse_atom(std::string_view text) {
    auto t = parse_type(text);
    if (t.atoms.size() != 1) throw SyntaxError("expected exactly one atom", 0);
    return t.atoms.front();
}

std::string to_string(SimpleType const& t) {
    if (t.exponent == 0) return t.base;
    return t.base + "^" + std::to_string(t.exponent);
}

std::string to_string(TypeAtom const& t) {
    if (t.is_simple()) return to_string(t.simple);
    std::string out = "[";
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
        if (i) out += ' ';
        out += to_string(t.parts[i]);
    }
    return out + "]";
}

std::string to_string(PregroupType const& t) {
    std::string out;
    for (std::size_t i = 0; i < t.atoms.size(); ++i) {
        if (i) out += ' ';
        out += to_string(t.atoms[i]);
    }
    return out;
}

}  // namespace gramwire
