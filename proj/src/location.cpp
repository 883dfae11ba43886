#include "tccs/location.hpp"

#include <atomic>

namespace tccs {

namespace {
std::atomic<std::uint64_t> g_next_location{1};
}

Location fresh_location() { return Location{g_next_location.fetch_add(1)}; }

}  // namespace tccs
