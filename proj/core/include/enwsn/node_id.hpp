#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace enwsn {

// Opaque node identifier. Ordered numerically so that tie-breaking by
// "smallest id" is well defined.
struct NodeId {
    std::uint32_t value = 0;

    constexpr NodeId() = default;
    constexpr explicit NodeId(std::uint32_t v) : value(v) {}

    friend constexpr auto operator<=>(NodeId, NodeId) = default;

    std::string str() const { return std::to_string(value); }
};

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

}  // namespace enwsn

template <>
struct std::hash<enwsn::NodeId> {
    std::size_t operator()(enwsn::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
