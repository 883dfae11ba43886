#ifndef TCCS_LOCGRAPH_HPP
#define TCCS_LOCGRAPH_HPP

#include <span>
#include <utility>
#include <vector>

#include "tccs/location.hpp"

namespace tccs {

// A finite graph over locations: the topology of a parallel composition.
// Edges are stored as ordered pairs (min, max), which makes the coherence
// relation symmetric and irreflexive by representation.
class LocGraph {
 public:
  using Edge = std::pair<Location, Location>;

  LocGraph() = default;
  LocGraph(std::vector<Location> web, std::vector<Edge> edges);

  static LocGraph single(Location p);
  static LocGraph complete(std::span<const Location> web);

  const std::vector<Location>& web() const { return web_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool contains(Location p) const;
  bool adjacent(Location p, Location q) const;
  std::vector<Location> neighbors(Location p) const;
  std::size_t size() const { return web_.size(); }
  bool empty() const { return web_.empty(); }

  bool operator==(const LocGraph&) const = default;

 private:
  std::vector<Location> web_;  // sorted, unique
  std::vector<Edge> edges_;    // normalized (first < second), sorted, unique
};

// Replaces vertex p of g by the whole graph h; former neighbors of p become
// neighbors of every vertex of h.
LocGraph graph_subst(const LocGraph& g, const LocGraph& h, Location p);

// The D-indexed sum of two graphs on disjoint webs: union plus the cross
// edges listed in d. d = web(g) x web(h) yields the full parallel
// composition.
LocGraph gplus(const LocGraph& g, const LocGraph& h,
               std::span<const std::pair<Location, Location>> d);

}  // namespace tccs

#endif
