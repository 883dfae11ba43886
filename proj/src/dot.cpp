#include "tccs/dot.hpp"

#include <sstream>

namespace tccs {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string dot_process(const ProcessPtr& p, const PrettyOptions& opts) {
  const ParNode& par = located_par(p);
  std::ostringstream os;
  os << "graph process {\n";
  os << "  node [shape=box];\n";
  for (const auto& [l, c] : par.components) {
    std::string name = to_string(l);
    auto it = opts.location_names.find(l);
    if (it != opts.location_names.end()) name = it->second;
    os << "  \"" << escape(to_string(l)) << "\" [label=\"" << escape(name + ": " + pretty(c, opts))
       << "\"];\n";
  }
  for (const auto& [a, b] : par.graph.edges())
    os << "  \"" << escape(to_string(a)) << "\" -- \"" << escape(to_string(b)) << "\";\n";
  os << "}\n";
  return os.str();
}

std::string dot_reduction_graph(const ReductionGraph& g) {
  std::ostringstream os;
  os << "digraph reductions {\n";
  os << "  node [shape=box];\n";
  for (std::size_t i = 0; i < g.states.size(); ++i)
    os << "  s" << i << " [label=\"" << escape(pretty(g.states[i])) << "\"];\n";
  for (const auto& e : g.edges)
    os << "  s" << e.from << " -> s" << e.to << " [label=\"" << escape(e.symbol.display())
       << "\"];\n";
  if (!g.complete) os << "  truncated [shape=plaintext, label=\"(truncated)\"];\n";
  os << "}\n";
  return os.str();
}

std::string dot_lts(Workspace& ws, const ProcessPtr& root, std::size_t bound,
                    std::size_t state_cap) {
  // States reachable through both tau steps and labeled transitions.
  std::vector<ProcessPtr> states;
  std::map<const Process*, std::size_t> index;
  struct Edge {
    std::size_t from, to;
    std::string label;
  };
  std::vector<Edge> edges;
  bool truncated = false;

  StateIndex::Entry rootE = ws.intern(located(root));
  states.push_back(rootE.rep);
  index[rootE.rep.get()] = 0;
  std::vector<std::pair<ProcessPtr, std::size_t>> work{{rootE.rep, 0}};
  while (!work.empty()) {
    auto [cur, depth] = work.back();
    work.pop_back();
    std::size_t from = index.at(cur.get());
    auto visit = [&](const ProcessPtr& target, const std::string& label) {
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
      edges.push_back({from, to, label});
    };
    for (const TauSucc& t : ws.tau_successors(cur)) visit(t.target, "tau");
    for (const LabeledTransition& lt : labeled_transitions(ws, cur)) {
      StateIndex::Entry e = ws.intern(lt.target);
      visit(e.rep, lt.symbol.display() + " @ " + to_string(lt.at));
    }
  }

  std::ostringstream os;
  os << "digraph lts {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < states.size(); ++i)
    os << "  s" << i << " [label=\"" << escape(pretty(states[i])) << "\"];\n";
  for (const auto& e : edges)
    os << "  s" << e.from << " -> s" << e.to << " [label=\"" << escape(e.label) << "\"];\n";
  if (truncated) os << "  truncated [shape=plaintext, label=\"(truncated)\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace tccs
