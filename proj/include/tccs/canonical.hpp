#ifndef TCCS_CANONICAL_HPP
#define TCCS_CANONICAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tccs/process.hpp"

namespace tccs {

inline constexpr std::size_t kDefaultIsoBound = 12;

// A location bijection, sorted by source location.
using LocationMap = std::vector<std::pair<Location, Location>>;

Location map_apply(const LocationMap& m, Location p);
LocationMap map_invert(const LocationMap& m);

// Exact canonical key for alpha-equivalence: two processes get the same key
// iff they are alpha-equivalent (location relabeling respecting the graph
// and component equality, recursively; mu-binders compared by de Bruijn
// position). `order` lists the top-level web in canonical vertex order when
// the process is located; it is empty otherwise.
struct CanonicalForm {
  std::string key;
  std::vector<Location> order;
};

// Throws WebTooLarge when some parallel composition in the term exceeds
// iso_bound vertices; callers fall back to pairwise iso checks.
CanonicalForm canonical_form(const ProcessPtr& p, std::size_t iso_bound = kDefaultIsoBound);

// Relabeling-invariant structural hash (collisions possible; used for
// bucketing before exact checks).
std::uint64_t alpha_hash(const ProcessPtr& p);

bool alpha_equal(const ProcessPtr& a, const ProcessPtr& b);

// Enumerates top-level web bijections witnessing alpha-equivalence of two
// located processes, up to `limit` of them (empty if none exists).
std::vector<LocationMap> par_isomorphisms(const ProcessPtr& a, const ProcessPtr& b,
                                          std::size_t limit);

// Interning of states up to alpha-equivalence. Uses canonical keys when the
// webs are within the iso bound, and hash buckets with pairwise iso checks
// beyond it. intern() returns the representative together with an iso from
// the inserted process's web onto the representative's web.
class StateIndex {
 public:
  explicit StateIndex(std::size_t iso_bound = kDefaultIsoBound) : iso_bound_(iso_bound) {}

  struct Entry {
    ProcessPtr rep;
    LocationMap to_rep;  // web(inserted) -> web(rep)
    bool inserted;       // true if this call created the representative
  };

  Entry intern(const ProcessPtr& p);
  std::size_t size() const { return count_; }

 private:
  std::size_t iso_bound_;
  std::size_t count_ = 0;
  // Representatives with their canonical vertex order, so hits build the iso
  // without re-canonicalizing the representative.
  std::map<std::string, std::pair<ProcessPtr, std::vector<Location>>> by_key_;
  std::unordered_map<std::uint64_t, std::vector<ProcessPtr>> buckets_;
};

}  // namespace tccs

#endif
