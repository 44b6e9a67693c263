#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "gramwire/diagram.hpp"

namespace gramwire {

/// Commutative spiders forget leg order and erase swaps; non-commutative
/// spiders keep a cyclic leg order and swaps are irreducible.
enum class Mode { Commutative, NonCommutative };

char const* to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string const& text);

struct RewriteOptions {
    Mode mode = Mode::Commutative;
    /// When set, every step picks a random applicable rewrite instead of the
    /// first one in node-id order. Used by the confluence experiment.
    std::optional<std::uint64_t> shuffle_seed;
    std::size_t max_steps = 1'000'000;
    /// Re-validate after every single rule application.
    bool check_each_step = false;
};

/// Fuses spiders sharing a wire until none do. In the non-commutative
/// mode the legs are spliced at the shared wire, keeping cyclic order.
/// Throws `DiagramError` if a spider ends up wired to itself.
Diagram fuse_spiders(Diagram d, Mode mode = Mode::Commutative);

/// Replaces two-legged spiders by the plain wire (or cup, or cap) they stand
/// for whenever that wire is well typed, and drops legless spiders.
Diagram eliminate_identities(Diagram d);

/// Removes every wrap/unwrap gadget and expands bundle wires, ports and
/// spiders into their components. Cups on bundles become nested component
/// cups. Throws `DiagramError` on a bundle shape mismatch across a wire.
Diagram unfold_wraps(Diagram d);

/// Caps every open output with a one-legged (delete) spider.
Diagram close_outputs(Diagram d);

/// Replaces every swap by the two crossing wires it stands for.
Diagram erase_swaps(Diagram d);

/// Unfolds, then fuses spiders and drops identities until nothing applies.
/// The commutative mode also erases swaps along the way.
Diagram normalize(Diagram d, RewriteOptions const& opts = {});
Diagram normalize(Diagram d, Mode mode);

}  // namespace gramwire
