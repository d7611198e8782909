#pragma once

#include "trapcc/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trapcc {

// Named reference configurations. The distances are stored as the exact
// decimal strings they are known by and parsed to nearest-double on demand,
// never re-derived.
struct GoldenEntry {
    std::string name;
    std::string description;
    // Decimal strings in component order (r12, r13, r14, r23, r24, r34).
    std::array<std::string, 6> decimals;

    DistanceVector distances() const;
};

const std::vector<GoldenEntry>& golden_registry();

// Case-insensitive lookup; returns nullopt for unknown names.
std::optional<GoldenEntry> golden_lookup(std::string_view name);

} // namespace trapcc
