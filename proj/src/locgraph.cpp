#include "tccs/locgraph.hpp"

#include <algorithm>

#include "tccs/errors.hpp"

namespace tccs {

namespace {

LocGraph::Edge norm_edge(Location a, Location b) {
  return a < b ? LocGraph::Edge{a, b} : LocGraph::Edge{b, a};
}

void sort_unique(std::vector<Location>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void sort_unique(std::vector<LocGraph::Edge>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

LocGraph::LocGraph(std::vector<Location> web, std::vector<Edge> edges) : web_(std::move(web)) {
  sort_unique(web_);
  edges_.reserve(edges.size());
  for (auto& [a, b] : edges) {
    if (a == b) continue;  // irreflexive by construction
    if (!std::binary_search(web_.begin(), web_.end(), a) ||
        !std::binary_search(web_.begin(), web_.end(), b))
      throw VertexNotInWeb("edge endpoint not in web");
    edges_.push_back(norm_edge(a, b));
  }
  sort_unique(edges_);
}

LocGraph LocGraph::single(Location p) { return LocGraph({p}, {}); }

LocGraph LocGraph::complete(std::span<const Location> web) {
  std::vector<Location> w(web.begin(), web.end());
  std::vector<Edge> es;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) es.push_back(norm_edge(w[i], w[j]));
  return LocGraph(std::move(w), std::move(es));
}

bool LocGraph::contains(Location p) const {
  return std::binary_search(web_.begin(), web_.end(), p);
}

bool LocGraph::adjacent(Location p, Location q) const {
  if (p == q) return false;
  return std::binary_search(edges_.begin(), edges_.end(), norm_edge(p, q));
}

std::vector<Location> LocGraph::neighbors(Location p) const {
  std::vector<Location> out;
  for (const auto& [a, b] : edges_) {
    if (a == p) out.push_back(b);
    if (b == p) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LocGraph graph_subst(const LocGraph& g, const LocGraph& h, Location p) {
  if (!g.contains(p)) throw VertexNotInWeb("graph_subst: vertex not in web");
  for (Location q : h.web())
    if (g.contains(q)) throw WebsNotDisjoint("graph_subst: webs overlap");

  std::vector<Location> web;
  for (Location q : g.web())
    if (q != p) web.push_back(q);
  web.insert(web.end(), h.web().begin(), h.web().end());

  std::vector<LocGraph::Edge> edges;
  for (const auto& [a, b] : g.edges()) {
    if (a != p && b != p) {
      edges.emplace_back(a, b);
    } else {
      // p's former neighbors become neighbors of every vertex of h.
      Location other = (a == p) ? b : a;
      for (Location q : h.web()) edges.push_back(other < q ? LocGraph::Edge{other, q}
                                                           : LocGraph::Edge{q, other});
    }
  }
  edges.insert(edges.end(), h.edges().begin(), h.edges().end());
  return LocGraph(std::move(web), std::move(edges));
}

LocGraph gplus(const LocGraph& g, const LocGraph& h,
               std::span<const std::pair<Location, Location>> d) {
  for (Location q : h.web())
    if (g.contains(q)) throw WebsNotDisjoint("gplus: webs overlap");

  std::vector<Location> web = g.web();
  web.insert(web.end(), h.web().begin(), h.web().end());

  std::vector<LocGraph::Edge> edges = g.edges();
  edges.insert(edges.end(), h.edges().begin(), h.edges().end());
  for (const auto& [a, b] : d) {
    if (!g.contains(a) || !h.contains(b))
      throw RelationOutOfRange("gplus: pair outside web(g) x web(h)");
    edges.push_back(a < b ? LocGraph::Edge{a, b} : LocGraph::Edge{b, a});
  }
  return LocGraph(std::move(web), std::move(edges));
}

}  // namespace tccs
