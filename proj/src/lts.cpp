#include "tccs/lts.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tccs/errors.hpp"

namespace tccs {

namespace {

void require_closed_located(const ProcessPtr& p) {
  if (!is_located(p)) throw Error("expected a located process (parallel composition)");
  if (!is_closed(p)) throw OpenProcess("free variable at an active position");
}

bool hidden_symbol(const std::vector<std::string>& hidden, const PrefixSymbol& s) {
  return std::binary_search(hidden.begin(), hidden.end(), s.name);
}

}  // namespace

std::vector<LabeledTransition> labeled_transitions(Workspace& ws, const ProcessPtr& p) {
  require_closed_located(p);
  const ParNode& par = located_par(p);
  const std::vector<std::string> hidden = restriction_set(p);

  std::vector<LabeledTransition> out;
  for (const auto& [at, comp] : par.components) {
    const auto sums = summands(ws.cansum_of(comp));
    for (const auto& [sym, args] : sums) {
      if (hidden_symbol(hidden, sym)) continue;

      std::size_t n = args.size();
      std::vector<ProcessPtr> largs(n);
      LocGraph spawned_graph;  // disjoint union of the argument graphs
      std::vector<std::vector<Location>> spawned(n);
      std::vector<std::pair<Location, ProcessPtr>> new_comps;
      for (std::size_t i = 0; i < n; ++i) {
        largs[i] = located(args[i]);
        if (largs[i]->as_restrict())
          throw Error("restriction below a prefix is not supported");
        const ParNode& g = located_par(largs[i]);
        spawned[i] = g.graph.web();
        spawned_graph = gplus(spawned_graph, g.graph, {});
        new_comps.insert(new_comps.end(), g.components.begin(), g.components.end());
      }

      LocGraph graph = graph_subst(par.graph, spawned_graph, at);
      std::vector<std::pair<Location, ProcessPtr>> comps;
      for (const auto& [l, c] : par.components)
        if (l != at) comps.emplace_back(l, c);
      comps.insert(comps.end(), new_comps.begin(), new_comps.end());

      LocationMap res;
      for (Location l : par.graph.web())
        if (l != at) res.emplace_back(l, l);
      for (const auto& li : spawned)
        for (Location l : li) res.emplace_back(l, at);

      ProcessPtr target = rewrap_restriction(p, Process::par(std::move(graph), std::move(comps)));
      out.push_back({sym, at, std::move(target), ResidualFn(std::move(res)), std::move(spawned)});
    }
  }
  return out;
}

std::set<PrefixSymbol> barbs(Workspace& ws, const ProcessPtr& p) {
  require_closed_located(p);
  const ParNode& par = located_par(p);
  const std::vector<std::string> hidden = restriction_set(p);
  std::set<PrefixSymbol> out;
  for (const auto& [_, comp] : par.components)
    for (const auto& [sym, args] : summands(ws.cansum_of(comp)))
      if (!hidden_symbol(hidden, sym)) out.insert(sym);
  return out;
}

std::vector<WeakTransition> weak_transitions(Workspace& ws, const ProcessPtr& p,
                                             const PrefixSymbol& symbol, std::size_t bound,
                                             bool* complete, std::size_t state_cap) {
  bool ok = true;
  TauClosure pre = tau_closure(ws, p, bound, state_cap);
  ok = ok && pre.complete;

  // Dedup by observable signature: anchor, composite residual, spawn
  // pattern, target representative.
  struct Sig {
    const Process* target;
    Location anchor;
    LocationMap composite;
    std::vector<int> pattern;
    auto operator<=>(const Sig&) const = default;
  };
  std::set<Sig> seen;
  std::vector<WeakTransition> out;

  for (const TauClosureEntry& mid_entry : pre.entries) {
    for (LabeledTransition& lt : labeled_transitions(ws, mid_entry.state)) {
      if (lt.symbol != symbol) continue;
      TauClosure post = tau_closure(ws, lt.target, bound, state_cap);
      ok = ok && post.complete;
      for (const TauClosureEntry& fin : post.entries) {
        WeakTransition wt;
        wt.symbol = symbol;
        wt.at = lt.at;
        wt.spawned = lt.spawned;
        wt.pre = mid_entry.residual;
        wt.mid = lt.residual;
        wt.post = fin.residual;
        wt.target = fin.state;

        Sig sig;
        sig.target = fin.state.get();
        sig.anchor = wt.anchor();
        sig.composite = wt.composite().pairs();
        for (Location l : web_of(fin.state)) {
          Location back = wt.post(l);
          int idx = -1;
          for (std::size_t i = 0; i < lt.spawned.size(); ++i)
            if (std::binary_search(lt.spawned[i].begin(), lt.spawned[i].end(), back)) {
              idx = static_cast<int>(i);
              break;
            }
          sig.pattern.push_back(idx);
        }
        if (seen.insert(sig).second) out.push_back(std::move(wt));
      }
    }
  }
  if (complete) *complete = ok;
  return out;
}

}  // namespace tccs
