#ifndef TCCS_LOCATION_HPP
#define TCCS_LOCATION_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace tccs {

// A vertex of a process graph. Ids are drawn from a global supply so that
// every location occurring in a term built through the library is unique;
// disjointness of webs then holds by construction.
struct Location {
  std::uint64_t id = 0;

  auto operator<=>(const Location&) const = default;
};

// Allocates a location never handed out before (atomic counter).
Location fresh_location();

inline std::string to_string(Location l) { return "l" + std::to_string(l.id); }

}  // namespace tccs

template <>
struct std::hash<tccs::Location> {
  std::size_t operator()(const tccs::Location& l) const noexcept {
    return std::hash<std::uint64_t>{}(l.id);
  }
};

#endif
