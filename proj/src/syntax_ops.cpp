#include "tccs/syntax_ops.hpp"

#include <atomic>

#include "tccs/errors.hpp"

namespace tccs {

CanonicalClass classify(const ProcessPtr& p) {
  using C = CanonicalClass;
  if (p->as_var()) return C::CanonicalProcess;
  if (p->as_zero()) return C::CanonicalGuardedSum;
  if (const auto* pr = p->as_prefix()) {
    for (const auto& a : pr->args)
      if (!is_canonical(classify(a))) return C::NotCanonical;
    return C::CanonicalGuardedSum;
  }
  if (const auto* s = p->as_sum()) {
    if (is_guarded_sum(classify(s->left)) && is_guarded_sum(classify(s->right)))
      return C::CanonicalGuardedSum;
    return C::NotCanonical;
  }
  if (const auto* f = p->as_fix()) {
    if (is_rec_guarded_sum(classify(f->body))) return C::RecursiveCanonicalGuardedSum;
    return C::NotCanonical;
  }
  if (const auto* par = p->as_par()) {
    for (const auto& [_, c] : par->components)
      if (!is_rec_guarded_sum(classify(c))) return C::NotCanonical;
    return C::CanonicalProcess;
  }
  const auto* r = p->as_restrict();
  return is_canonical(classify(r->body)) ? C::CanonicalProcess : C::NotCanonical;
}

std::string to_string(CanonicalClass c) {
  switch (c) {
    case CanonicalClass::CanonicalProcess: return "canonical process";
    case CanonicalClass::CanonicalGuardedSum: return "canonical guarded sum";
    case CanonicalClass::RecursiveCanonicalGuardedSum: return "recursive canonical guarded sum";
    case CanonicalClass::NotCanonical: return "not canonical";
  }
  return "?";
}

namespace {

std::string fresh_var(const std::string& base) {
  static std::atomic<std::uint64_t> counter{0};
  return base + "'" + std::to_string(counter.fetch_add(1));
}

ProcessPtr subst(const ProcessPtr& r, const ProcessPtr& p, const std::string& x,
                 const std::set<std::string>& avoid);

// Replaces a bare-variable parallel component: a guarded sum stands in
// directly, a located replacement is spliced into the composition graph.
ProcessPtr splice_component(const ParNode& par, Location at, const ProcessPtr& replacement) {
  ProcessPtr rep = fresh_copy(replacement);
  if (rep->as_par()) {
    const ParNode& h = *rep->as_par();
    LocGraph g = graph_subst(par.graph, h.graph, at);
    std::vector<std::pair<Location, ProcessPtr>> comps;
    for (const auto& [l, c] : par.components)
      if (l != at) comps.emplace_back(l, c);
    comps.insert(comps.end(), h.components.begin(), h.components.end());
    return Process::par(std::move(g), std::move(comps));
  }
  if (rep->as_restrict())
    throw Error("cannot splice a restricted process into a parallel composition");
  std::vector<std::pair<Location, ProcessPtr>> comps;
  for (const auto& [l, c] : par.components) comps.emplace_back(l, l == at ? rep : c);
  return Process::par(par.graph, std::move(comps));
}

ProcessPtr subst_par(const ParNode& par, const ProcessPtr& p, const std::string& x,
                     const std::set<std::string>& avoid) {
  // Bare-variable components are substitution holes that splice; all other
  // components substitute recursively.
  ProcessPtr current;
  {
    std::vector<std::pair<Location, ProcessPtr>> comps;
    for (const auto& [l, c] : par.components) {
      if (c->as_var() && c->as_var()->name == x)
        comps.emplace_back(l, c);  // handled below, after the recursion pass
      else
        comps.emplace_back(l, subst(c, p, x, avoid));
    }
    current = Process::par(par.graph, std::move(comps));
  }
  while (true) {
    const ParNode& cur = *current->as_par();
    Location hole{};
    bool found = false;
    for (const auto& [l, c] : cur.components) {
      if (c->as_var() && c->as_var()->name == x) {
        hole = l;
        found = true;
        break;
      }
    }
    if (!found) return current;
    current = splice_component(cur, hole, p);
  }
}

ProcessPtr subst(const ProcessPtr& r, const ProcessPtr& p, const std::string& x,
                 const std::set<std::string>& avoid) {
  if (const auto* v = r->as_var()) {
    if (v->name == x) return fresh_copy(p);
    return r;
  }
  if (r->as_zero()) return r;
  if (const auto* f = r->as_fix()) {
    if (f->var == x) return r;  // x is shadowed
    if (avoid.count(f->var) && free_vars(f->body).count(x)) {
      // The binder would capture a free variable of p: rename it first.
      std::string nv = fresh_var(f->var);
      ProcessPtr renamed = subst(f->body, Process::var(nv), f->var, {});
      return Process::fix(nv, subst(renamed, p, x, avoid));
    }
    return Process::fix(f->var, subst(f->body, p, x, avoid));
  }
  if (const auto* pr = r->as_prefix()) {
    std::vector<ProcessPtr> args;
    args.reserve(pr->args.size());
    for (const auto& a : pr->args) args.push_back(subst(a, p, x, avoid));
    return Process::prefix(pr->symbol, std::move(args));
  }
  if (const auto* s = r->as_sum())
    return Process::sum(subst(s->left, p, x, avoid), subst(s->right, p, x, avoid));
  if (const auto* rs = r->as_restrict())
    return Process::restrict(subst(rs->body, p, x, avoid), rs->hidden);
  return subst_par(*r->as_par(), p, x, avoid);
}

}  // namespace

ProcessPtr substitute_var(const ProcessPtr& r, const ProcessPtr& p, const std::string& x) {
  if (p->as_var() && p->as_var()->name == x) return r;
  return subst(r, p, x, free_vars(p));
}

ProcessPtr cansum(const ProcessPtr& s, std::size_t unfold_limit) {
  CanonicalClass c = classify(s);
  if (!is_rec_guarded_sum(c))
    throw NotRecursiveGuardedSum("cansum: input is " + to_string(c));
  ProcessPtr cur = s;
  for (std::size_t i = 0; i <= unfold_limit; ++i) {
    if (is_guarded_sum(classify(cur))) return cur;
    const auto* f = cur->as_fix();
    if (!f) throw NotRecursiveGuardedSum("cansum: unfolding left the fragment");
    cur = substitute_var(f->body, cur, f->var);
  }
  throw UnfoldLimitExceeded("cansum: unfold limit exceeded");
}

std::vector<std::pair<PrefixSymbol, std::vector<ProcessPtr>>> summands(const ProcessPtr& gs) {
  std::vector<std::pair<PrefixSymbol, std::vector<ProcessPtr>>> out;
  if (gs->as_zero()) return out;
  if (const auto* pr = gs->as_prefix()) {
    out.emplace_back(pr->symbol, pr->args);
    return out;
  }
  if (const auto* s = gs->as_sum()) {
    auto l = summands(s->left);
    auto r = summands(s->right);
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  throw NotGuardedSum("summands: not a guarded sum");
}

}  // namespace tccs
