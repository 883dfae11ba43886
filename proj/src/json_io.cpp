#include "tccs/json_io.hpp"

#include "tccs/lts.hpp"
#include "tccs/pretty.hpp"

namespace tccs {

using nlohmann::json;

json json_process(const ProcessPtr& p) {
  if (const auto* v = p->as_var()) return json{{"kind", "var"}, {"name", v->name}};
  if (p->as_zero()) return json{{"kind", "zero"}};
  if (const auto* f = p->as_fix())
    return json{{"kind", "fix"}, {"var", f->var}, {"body", json_process(f->body)}};
  if (const auto* pr = p->as_prefix()) {
    json args = json::array();
    for (const auto& a : pr->args) args.push_back(json_process(a));
    return json{{"kind", "prefix"},
                {"symbol", pr->symbol.name},
                {"polarity", pr->symbol.is_co() ? "co" : "plain"},
                {"args", std::move(args)}};
  }
  if (const auto* s = p->as_sum())
    return json{{"kind", "sum"}, {"left", json_process(s->left)}, {"right", json_process(s->right)}};
  if (const auto* r = p->as_restrict())
    return json{{"kind", "restrict"}, {"hidden", r->hidden}, {"body", json_process(r->body)}};
  const auto* par = p->as_par();
  json comps = json::array();
  for (const auto& [l, c] : par->components)
    comps.push_back(json{{"location", l.id}, {"process", json_process(c)}});
  json edges = json::array();
  for (const auto& [a, b] : par->graph.edges()) edges.push_back(json::array({a.id, b.id}));
  return json{{"kind", "par"}, {"components", std::move(comps)}, {"edges", std::move(edges)}};
}

json json_verdict(const std::string& query, const Verdict& v) {
  json out{{"schema", kJsonSchema}, {"query", query}, {"result", to_string(v.result)}};
  if (v.witness) {
    json w{{"kind", v.witness->kind}, {"detail", v.witness->detail}};
    for (const auto& [k, val] : v.witness->fields) w[k] = val;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

json json_reduction_graph(const ReductionGraph& g) {
  json states = json::array();
  for (std::size_t i = 0; i < g.states.size(); ++i)
    states.push_back(json{{"id", i}, {"label", pretty(g.states[i])}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json{{"from", e.from}, {"to", e.to}, {"symbol", e.symbol.display()}});
  return json{{"schema", kJsonSchema},
              {"states", std::move(states)},
              {"edges", std::move(edges)},
              {"complete", g.complete}};
}

json json_lts(Workspace& ws, const ProcessPtr& root, std::size_t bound, std::size_t state_cap) {
  std::vector<ProcessPtr> states;
  std::map<const Process*, std::size_t> index;
  json edges = json::array();
  bool truncated = false;

  StateIndex::Entry rootE = ws.intern(located(root));
  states.push_back(rootE.rep);
  index[rootE.rep.get()] = 0;
  std::vector<std::pair<ProcessPtr, std::size_t>> work{{rootE.rep, 0}};
  while (!work.empty()) {
    auto [cur, depth] = work.back();
    work.pop_back();
    std::size_t from = index.at(cur.get());
    auto visit = [&](const ProcessPtr& target, json edge) -> void {
      auto it = index.find(target.get());
      std::size_t to;
      if (it == index.end()) {
        if (depth + 1 > bound || states.size() >= state_cap) {
          truncated = true;
          return;
        }
        to = states.size();
        index[target.get()] = to;
        states.push_back(target);
        work.emplace_back(target, depth + 1);
      } else {
        to = it->second;
      }
      edge["from"] = from;
      edge["to"] = to;
      edges.push_back(std::move(edge));
    };
    for (const TauSucc& t : ws.tau_successors(cur))
      visit(t.target, json{{"label", "tau"}, {"interaction", t.symbol.display()}});
    for (const LabeledTransition& lt : labeled_transitions(ws, cur)) {
      StateIndex::Entry e = ws.intern(lt.target);
      visit(e.rep, json{{"label", lt.symbol.display()}, {"at", to_string(lt.at)}});
    }
  }

  json jstates = json::array();
  for (std::size_t i = 0; i < states.size(); ++i)
    jstates.push_back(json{{"id", i}, {"label", pretty(states[i])}});
  return json{{"schema", kJsonSchema},
              {"states", std::move(jstates)},
              {"transitions", std::move(edges)},
              {"complete", !truncated}};
}

}  // namespace tccs
