#ifndef TCCS_PRETTY_HPP
#define TCCS_PRETTY_HPP

#include <map>
#include <string>

#include "tccs/process.hpp"

namespace tccs {

struct PrettyOptions {
  // Preferred display names for locations; unnamed ones render as l<id>.
  std::map<Location, std::string> location_names;
};

// Reparseable concrete syntax for a process term.
std::string pretty(const ProcessPtr& p, const PrettyOptions& opts = {});

}  // namespace tccs

#endif
