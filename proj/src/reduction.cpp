#include "tccs/reduction.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "tccs/errors.hpp"

namespace tccs {

ResidualFn::ResidualFn(LocationMap mapping) : map_(std::move(mapping)) {
  std::sort(map_.begin(), map_.end());
}

ResidualFn ResidualFn::identity(std::span<const Location> web) {
  LocationMap m;
  m.reserve(web.size());
  for (Location l : web) m.emplace_back(l, l);
  return ResidualFn(std::move(m));
}

Location ResidualFn::operator()(Location p) const { return map_apply(map_, p); }

std::vector<Location> ResidualFn::domain() const {
  std::vector<Location> out;
  out.reserve(map_.size());
  for (const auto& [a, _] : map_) out.push_back(a);
  return out;
}

ResidualFn ResidualFn::compose(const ResidualFn& outer, const ResidualFn& inner) {
  LocationMap m;
  m.reserve(inner.map_.size());
  for (const auto& [a, b] : inner.map_) m.emplace_back(a, outer(b));
  return ResidualFn(std::move(m));
}

ResidualFn ResidualFn::precompose_iso(const LocationMap& new_to_old) const {
  LocationMap m;
  m.reserve(new_to_old.size());
  for (const auto& [n, o] : new_to_old) m.emplace_back(n, (*this)(o));
  return ResidualFn(std::move(m));
}

const ProcessPtr& Workspace::cansum_of(const ProcessPtr& p) {
  auto it = cansum_memo_.find(p.get());
  if (it != cansum_memo_.end()) return it->second.second;
  ProcessPtr cs = cansum(p);
  return cansum_memo_.emplace(p.get(), std::pair{p, std::move(cs)}).first->second.second;
}

StateIndex::Entry Workspace::intern(const ProcessPtr& p) { return states_.intern(p); }

namespace {

void require_closed_located(const ProcessPtr& p) {
  if (!is_located(p)) throw Error("expected a located process (parallel composition)");
  if (!is_closed(p)) throw OpenProcess("free variable at an active position");
}

}  // namespace

std::vector<Redex> enumerate_redexes(Workspace& ws, const ProcessPtr& p) {
  require_closed_located(p);
  const ParNode& par = located_par(p);
  std::vector<Redex> out;
  for (const auto& [a, b] : par.graph.edges()) {
    const auto sa = summands(ws.cansum_of(par_component(par, a)));
    const auto sb = summands(ws.cansum_of(par_component(par, b)));
    for (std::size_t i = 0; i < sa.size(); ++i) {
      for (std::size_t j = 0; j < sb.size(); ++j) {
        if (sa[i].first != sb[j].first.dual()) continue;
        if (!sa[i].first.is_co())
          out.push_back({a, b, sa[i].first, i, j});
        else
          out.push_back({b, a, sb[j].first, j, i});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Step step(Workspace& ws, const ProcessPtr& p, const Redex& r) {
  require_closed_located(p);
  const ParNode& par = located_par(p);
  if (!par.graph.adjacent(r.plain_at, r.co_at)) throw InvalidRedex("locations not coherent");

  const auto plain_summands = summands(ws.cansum_of(par_component(par, r.plain_at)));
  const auto co_summands = summands(ws.cansum_of(par_component(par, r.co_at)));
  if (r.plain_summand >= plain_summands.size() || r.co_summand >= co_summands.size())
    throw InvalidRedex("summand index out of range");
  const auto& [psym, pargs] = plain_summands[r.plain_summand];
  const auto& [qsym, qargs] = co_summands[r.co_summand];
  if (psym != r.symbol || psym.is_co() || qsym != r.symbol.dual())
    throw InvalidRedex("summands do not carry dual prefixes");
  std::size_t n = pargs.size();
  if (qargs.size() != n) throw InvalidRedex("dual prefixes with different arities");

  // Locate the released arguments; guarded sums become fresh single vertices.
  std::vector<ProcessPtr> lp(n), lq(n);
  for (std::size_t i = 0; i < n; ++i) {
    lp[i] = located(pargs[i]);
    lq[i] = located(qargs[i]);
    if (lp[i]->as_restrict() || lq[i]->as_restrict())
      throw Error("restriction below a prefix is not supported");
  }

  // Residual: spawned locations map to the vertex they came from.
  LocationMap res;
  std::map<Location, int> spawn_side;  // 0 = plain side, 1 = co side
  std::vector<std::vector<Location>> spawned_plain(n), spawned_co(n);
  for (std::size_t i = 0; i < n; ++i) {
    spawned_plain[i] = web_of(lp[i]);
    spawned_co[i] = web_of(lq[i]);
    for (Location l : spawned_plain[i]) {
      res.emplace_back(l, r.plain_at);
      spawn_side[l] = 0;
    }
    for (Location l : spawned_co[i]) {
      res.emplace_back(l, r.co_at);
      spawn_side[l] = 1;
    }
  }
  std::vector<Location> survivors;
  for (Location l : par.graph.web())
    if (l != r.plain_at && l != r.co_at) {
      survivors.push_back(l);
      res.emplace_back(l, l);
    }

  std::vector<Location> web = survivors;
  std::vector<LocGraph::Edge> edges;
  std::vector<std::pair<Location, ProcessPtr>> comps;
  for (Location l : survivors) comps.emplace_back(l, par_component(par, l));

  auto add_edge = [&edges](Location x, Location y) {
    edges.push_back(x < y ? LocGraph::Edge{x, y} : LocGraph::Edge{y, x});
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (const ProcessPtr* side : {&lp[i], &lq[i]}) {
      const ParNode& g = located_par(*side);
      web.insert(web.end(), g.graph.web().begin(), g.graph.web().end());
      edges.insert(edges.end(), g.graph.edges().begin(), g.graph.edges().end());
      comps.insert(comps.end(), g.components.begin(), g.components.end());
    }
    // Cross edges between same-index argument webs only.
    for (Location x : web_of(lp[i]))
      for (Location y : web_of(lq[i])) add_edge(x, y);
  }

  // Inherited coherence: pairs not both spawned take their images' edges.
  for (std::size_t si = 0; si < survivors.size(); ++si)
    for (std::size_t sj = si + 1; sj < survivors.size(); ++sj)
      if (par.graph.adjacent(survivors[si], survivors[sj]))
        add_edge(survivors[si], survivors[sj]);
  for (const auto& [l, side] : spawn_side) {
    Location origin = side == 0 ? r.plain_at : r.co_at;
    for (Location s : survivors)
      if (par.graph.adjacent(origin, s)) add_edge(l, s);
  }

  ProcessPtr reduct =
      rewrap_restriction(p, Process::par(LocGraph(std::move(web), std::move(edges)), std::move(comps)));
  return Step{r, std::move(reduct), ResidualFn(std::move(res)), std::move(spawned_plain),
              std::move(spawned_co)};
}

const std::vector<TauSucc>& Workspace::tau_successors(const ProcessPtr& rep) {
  auto it = tau_succ_memo_.find(rep.get());
  if (it != tau_succ_memo_.end()) return it->second.second;
  std::vector<TauSucc> succs;
  for (const Redex& r : enumerate_redexes(*this, rep)) {
    Step s = step(*this, rep, r);
    StateIndex::Entry e = intern(s.reduct);
    // Residual on the representative: apply the interning iso backwards.
    ResidualFn res = s.residual.precompose_iso(map_invert(e.to_rep));
    succs.push_back({e.rep, std::move(res), r.symbol});
  }
  return tau_succ_memo_.emplace(rep.get(), std::pair{rep, std::move(succs)})
      .first->second.second;
}

TauClosure tau_closure(Workspace& ws, const ProcessPtr& p, std::size_t bound,
                       std::size_t state_cap) {
  StateIndex::Entry root = ws.intern(p);
  ResidualFn to_input(map_invert(root.to_rep));  // web(root rep) -> web(p)

  TauClosure out;
  std::map<const Process*, std::set<ResidualFn>> seen;
  struct Item {
    ProcessPtr state;
    ResidualFn res;  // web(state) -> web(root rep)
    std::size_t depth;
  };
  std::deque<Item> queue;
  ResidualFn id = ResidualFn::identity(web_of(root.rep));
  seen[root.rep.get()].insert(id);
  queue.push_back({root.rep, id, 0});
  std::size_t total = 1;

  while (!queue.empty()) {
    Item cur = queue.front();
    queue.pop_front();
    out.entries.push_back(
        {cur.state, ResidualFn::compose(to_input, cur.res), cur.depth});
    for (const TauSucc& s : ws.tau_successors(cur.state)) {
      ResidualFn next = ResidualFn::compose(cur.res, s.residual);
      auto& rset = seen[s.target.get()];
      if (rset.count(next)) continue;
      if (cur.depth + 1 > bound || total >= state_cap) {
        out.complete = false;
        continue;
      }
      rset.insert(next);
      ++total;
      queue.push_back({s.target, std::move(next), cur.depth + 1});
    }
  }
  return out;
}

ReductionGraph reduction_graph(Workspace& ws, const ProcessPtr& p, std::size_t bound,
                               std::size_t state_cap) {
  StateIndex::Entry root = ws.intern(p);
  ReductionGraph g;
  std::map<const Process*, std::size_t> index;
  struct Item {
    ProcessPtr state;
    std::size_t depth;
  };
  std::deque<Item> queue;
  index[root.rep.get()] = 0;
  g.states.push_back(root.rep);
  queue.push_back({root.rep, 0});

  while (!queue.empty()) {
    Item cur = queue.front();
    queue.pop_front();
    std::size_t from = index.at(cur.state.get());
    for (const TauSucc& s : ws.tau_successors(cur.state)) {
      auto it = index.find(s.target.get());
      std::size_t to;
      if (it == index.end()) {
        if (cur.depth + 1 > bound || g.states.size() >= state_cap) {
          g.complete = false;
          continue;
        }
        to = g.states.size();
        index[s.target.get()] = to;
        g.states.push_back(s.target);
        queue.push_back({s.target, cur.depth + 1});
      } else {
        to = it->second;
      }
      g.edges.push_back({from, to, s.symbol});
    }
  }
  return g;
}

}  // namespace tccs
