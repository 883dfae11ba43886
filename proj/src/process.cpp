#include "tccs/process.hpp"

#include <algorithm>

#include "tccs/errors.hpp"

namespace tccs {

namespace {

ProcessPtr make(Process::Node node) {
  struct Raw : Process {
    explicit Raw(Process::Node n) : Process(std::move(n)) {}
  };
  return std::make_shared<const Raw>(std::move(node));
}

}  // namespace

ProcessPtr Process::var(std::string name) { return make(VarNode{std::move(name)}); }

ProcessPtr Process::fix(std::string var, ProcessPtr body) {
  return make(FixNode{std::move(var), std::move(body)});
}

ProcessPtr Process::prefix(PrefixSymbol symbol, std::vector<ProcessPtr> args) {
  return make(PrefixNode{std::move(symbol), std::move(args)});
}

ProcessPtr Process::zero() { return make(ZeroNode{}); }

ProcessPtr Process::sum(ProcessPtr left, ProcessPtr right) {
  return make(SumNode{std::move(left), std::move(right)});
}

ProcessPtr Process::par(LocGraph graph, std::vector<std::pair<Location, ProcessPtr>> components) {
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (components.size() != graph.web().size())
    throw Error("par: component domain and web differ in size");
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].first != graph.web()[i])
      throw Error("par: component domain differs from web");
  return make(ParNode{std::move(graph), std::move(components)});
}

ProcessPtr Process::empty() { return par({}, {}); }

ProcessPtr Process::restrict(ProcessPtr body, std::vector<std::string> hidden) {
  std::sort(hidden.begin(), hidden.end());
  hidden.erase(std::unique(hidden.begin(), hidden.end()), hidden.end());
  if (const auto* r = body->as_restrict()) {
    std::vector<std::string> merged = r->hidden;
    merged.insert(merged.end(), hidden.begin(), hidden.end());
    return restrict(r->body, std::move(merged));
  }
  if (hidden.empty()) return body;
  return make(RestrictNode{std::move(body), std::move(hidden)});
}

const ProcessPtr& par_component(const ParNode& par, Location p) {
  auto it = std::lower_bound(par.components.begin(), par.components.end(), p,
                             [](const auto& c, Location l) { return c.first < l; });
  if (it == par.components.end() || it->first != p)
    throw VertexNotInWeb("no component at " + to_string(p));
  return it->second;
}

bool is_located(const ProcessPtr& p) {
  if (p->as_par()) return true;
  if (const auto* r = p->as_restrict()) return is_located(r->body);
  return false;
}

const ParNode& located_par(const ProcessPtr& p) {
  if (const auto* par = p->as_par()) return *par;
  if (const auto* r = p->as_restrict()) return located_par(r->body);
  throw Error("process is not in located form");
}

std::vector<std::string> restriction_set(const ProcessPtr& p) {
  if (const auto* r = p->as_restrict()) return r->hidden;
  return {};
}

ProcessPtr rewrap_restriction(const ProcessPtr& like, ProcessPtr body) {
  if (const auto* r = like->as_restrict()) return Process::restrict(std::move(body), r->hidden);
  return body;
}

const std::vector<Location>& web_of(const ProcessPtr& p) { return located_par(p).graph.web(); }

ProcessPtr located(const ProcessPtr& p) {
  if (p->as_par()) return p;
  if (const auto* r = p->as_restrict())
    return Process::restrict(located(r->body), r->hidden);
  if (p->as_var()) throw OpenProcess("free variable at a located position");
  Location l = fresh_location();
  return Process::par(LocGraph::single(l), {{l, p}});
}

ProcessPtr gplus_proc(const ProcessPtr& p,
                      std::span<const std::pair<Location, Location>> d, const ProcessPtr& q) {
  const ParNode& a = located_par(p);
  const ParNode& b = located_par(q);
  if (p->as_restrict() || q->as_restrict())
    throw Error("cannot compose restricted processes in parallel");
  LocGraph g = gplus(a.graph, b.graph, d);
  std::vector<std::pair<Location, ProcessPtr>> comps = a.components;
  comps.insert(comps.end(), b.components.begin(), b.components.end());
  return Process::par(std::move(g), std::move(comps));
}

ProcessPtr full_par(const ProcessPtr& p, const ProcessPtr& q) {
  ProcessPtr lp = located(p);
  ProcessPtr lq = located(p.get() == q.get() ? fresh_copy(q) : q);
  std::vector<std::pair<Location, Location>> d;
  for (Location a : web_of(lp))
    for (Location b : web_of(lq)) d.emplace_back(a, b);
  return gplus_proc(lp, d, lq);
}

namespace {

void free_vars_rec(const ProcessPtr& p, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  if (const auto* v = p->as_var()) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (const auto* f = p->as_fix()) {
    bool fresh = bound.insert(f->var).second;
    free_vars_rec(f->body, bound, out);
    if (fresh) bound.erase(f->var);
  } else if (const auto* pr = p->as_prefix()) {
    for (const auto& a : pr->args) free_vars_rec(a, bound, out);
  } else if (const auto* par = p->as_par()) {
    for (const auto& [_, c] : par->components) free_vars_rec(c, bound, out);
  } else if (const auto* s = p->as_sum()) {
    free_vars_rec(s->left, bound, out);
    free_vars_rec(s->right, bound, out);
  } else if (const auto* r = p->as_restrict()) {
    free_vars_rec(r->body, bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const ProcessPtr& p) {
  std::set<std::string> bound, out;
  free_vars_rec(p, bound, out);
  return out;
}

bool is_closed(const ProcessPtr& p) { return free_vars(p).empty(); }

ProcessPtr fresh_copy(const ProcessPtr& p) {
  if (p->as_var() || p->as_zero()) return p;
  if (const auto* f = p->as_fix()) return Process::fix(f->var, fresh_copy(f->body));
  if (const auto* pr = p->as_prefix()) {
    std::vector<ProcessPtr> args;
    args.reserve(pr->args.size());
    for (const auto& a : pr->args) args.push_back(fresh_copy(a));
    return Process::prefix(pr->symbol, std::move(args));
  }
  if (const auto* s = p->as_sum())
    return Process::sum(fresh_copy(s->left), fresh_copy(s->right));
  if (const auto* r = p->as_restrict())
    return Process::restrict(fresh_copy(r->body), r->hidden);
  const auto* par = p->as_par();
  std::vector<Location> web;
  std::map<Location, Location> rename;
  for (Location l : par->graph.web()) {
    Location nl = fresh_location();
    rename[l] = nl;
    web.push_back(nl);
  }
  std::vector<LocGraph::Edge> edges;
  for (const auto& [a, b] : par->graph.edges()) edges.emplace_back(rename[a], rename[b]);
  std::vector<std::pair<Location, ProcessPtr>> comps;
  for (const auto& [l, c] : par->components) comps.emplace_back(rename[l], fresh_copy(c));
  return Process::par(LocGraph(std::move(web), std::move(edges)), std::move(comps));
}

std::optional<std::string> arity_violation(const ProcessPtr& p, const Signature& sig) {
  if (const auto* pr = p->as_prefix()) {
    auto n = sig.arity(pr->symbol.name);
    if (!n) return pr->symbol.name;
    if (*n != pr->args.size()) return pr->symbol.name;
    for (const auto& a : pr->args)
      if (auto v = arity_violation(a, sig)) return v;
    return std::nullopt;
  }
  if (const auto* f = p->as_fix()) return arity_violation(f->body, sig);
  if (const auto* s = p->as_sum()) {
    if (auto v = arity_violation(s->left, sig)) return v;
    return arity_violation(s->right, sig);
  }
  if (const auto* par = p->as_par()) {
    for (const auto& [_, c] : par->components)
      if (auto v = arity_violation(c, sig)) return v;
    return std::nullopt;
  }
  if (const auto* r = p->as_restrict()) return arity_violation(r->body, sig);
  return std::nullopt;
}

std::set<std::string> symbols_of(const ProcessPtr& p) {
  std::set<std::string> out;
  if (const auto* pr = p->as_prefix()) {
    out.insert(pr->symbol.name);
    for (const auto& a : pr->args) {
      auto s = symbols_of(a);
      out.insert(s.begin(), s.end());
    }
  } else if (const auto* f = p->as_fix()) {
    out = symbols_of(f->body);
  } else if (const auto* s = p->as_sum()) {
    out = symbols_of(s->left);
    auto r = symbols_of(s->right);
    out.insert(r.begin(), r.end());
  } else if (const auto* par = p->as_par()) {
    for (const auto& [_, c] : par->components) {
      auto s = symbols_of(c);
      out.insert(s.begin(), s.end());
    }
  } else if (const auto* r = p->as_restrict()) {
    out = symbols_of(r->body);
  }
  return out;
}

}  // namespace tccs
