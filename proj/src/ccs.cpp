#include "tccs/ccs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tccs/canonical.hpp"
#include "tccs/errors.hpp"
#include "tccs/syntax_ops.hpp"

namespace tccs {

namespace {

bool fragment_rec(const ProcessPtr& p) {
  if (p->as_var() || p->as_zero()) return true;
  if (const auto* f = p->as_fix()) return fragment_rec(f->body);
  if (const auto* pr = p->as_prefix()) {
    if (pr->args.size() > 1) return false;
    for (const auto& a : pr->args)
      if (!fragment_rec(a)) return false;
    return true;
  }
  if (const auto* s = p->as_sum()) return fragment_rec(s->left) && fragment_rec(s->right);
  if (p->as_restrict()) return false;
  const auto* par = p->as_par();
  std::size_t n = par->graph.web().size();
  if (par->graph.edges().size() != n * (n - 1) / 2) return false;
  for (const auto& [_, c] : par->components)
    if (!fragment_rec(c)) return false;
  return true;
}

}  // namespace

bool in_ccs_fragment(const ProcessPtr& p) { return fragment_rec(p); }

void require_ccs_fragment(const ProcessPtr& p) {
  if (!in_ccs_fragment(p))
    throw NotCCSFragment(
        "process outside the word fragment (arity >= 2, restriction, or incomplete graph)");
}

std::vector<std::pair<ProcessPtr, ProcessPtr>> ccs_project(const LocalizedRelation& r) {
  std::vector<std::pair<ProcessPtr, ProcessPtr>> out;
  std::set<std::pair<const Process*, const Process*>> seen;
  for (const auto& t : r.triples)
    if (seen.insert({t.left.get(), t.right.get()}).second) out.emplace_back(t.left, t.right);
  return out;
}

LocalizedRelation ccs_lift(std::span<const std::pair<ProcessPtr, ProcessPtr>> pairs) {
  LocalizedRelation out;
  for (const auto& [p, q] : pairs) {
    ProcessPtr lp = located(p);
    ProcessPtr lq = located(q);
    LocRel full = rel_full(web_of(lp), web_of(lq));
    out.triples.push_back({std::move(lp), std::move(full), std::move(lq)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical weak bisimilarity on the word fragment.
//
// A state is the multiset of component guarded sums: complete graphs carry
// no topology, so parallel composition is flattening. This machinery is kept
// independent of the located engine on purpose.
// ---------------------------------------------------------------------------

namespace {

struct CcsLts {
  // state -> (label, successor); label polarity Plain/Co, tau encoded
  // separately.
  struct Edge {
    bool tau;
    PrefixSymbol label;
    std::size_t to;
  };
  std::vector<std::vector<Edge>> edges;
  std::vector<std::string> keys;
};

using CcsState = std::vector<ProcessPtr>;  // component guarded sums

std::string state_key(const CcsState& s) {
  std::vector<std::string> ks;
  ks.reserve(s.size());
  for (const auto& c : s) ks.push_back(canonical_form(c, 64).key);
  std::sort(ks.begin(), ks.end());
  std::string out;
  for (auto& k : ks) {
    out += k;
    out += '|';
  }
  return out;
}

// Components contributed by a prefix argument: located arguments flatten
// (the fragment's graphs are complete), guarded sums stand alone.
void flatten_into(const ProcessPtr& arg, CcsState& out) {
  if (arg->as_par()) {
    for (const auto& [_, c] : arg->as_par()->components) out.push_back(c);
    return;
  }
  out.push_back(arg);
}

class CcsExplorer {
 public:
  explicit CcsExplorer(std::size_t cap) : cap_(cap) {}

  std::size_t intern(const CcsState& s) {
    std::string key = state_key(s);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    std::size_t id = states_.size();
    if (id >= cap_) throw StateSpaceExceeded("word-fragment state cap exceeded");
    index_.emplace(std::move(key), id);
    states_.push_back(s);
    lts_.edges.emplace_back();
    expanded_.push_back(false);
    return id;
  }

  void explore(std::size_t root) {
    std::deque<std::size_t> work{root};
    while (!work.empty()) {
      std::size_t id = work.front();
      work.pop_front();
      if (expanded_[id]) continue;
      expanded_[id] = true;
      CcsState state = states_[id];

      std::vector<std::vector<std::pair<PrefixSymbol, std::vector<ProcessPtr>>>> sums;
      sums.reserve(state.size());
      for (const auto& c : state) sums.push_back(summands(cansum(c)));

      // Labeled transitions: one component fires.
      for (std::size_t i = 0; i < state.size(); ++i) {
        for (const auto& [sym, args] : sums[i]) {
          CcsState next;
          for (std::size_t k = 0; k < state.size(); ++k)
            if (k != i) next.push_back(state[k]);
          for (const auto& a : args) flatten_into(a, next);
          std::size_t to = intern(next);
          lts_.edges[id].push_back({false, sym, to});
          work.push_back(to);
        }
      }
      // Tau transitions: dual summands of two distinct components.
      for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t j = 0; j < state.size(); ++j) {
          if (i == j) continue;
          for (const auto& [si, ai] : sums[i]) {
            if (si.is_co()) continue;
            for (const auto& [sj, aj] : sums[j]) {
              if (sj != si.dual()) continue;
              CcsState next;
              for (std::size_t k = 0; k < state.size(); ++k)
                if (k != i && k != j) next.push_back(state[k]);
              for (const auto& a : ai) flatten_into(a, next);
              for (const auto& a : aj) flatten_into(a, next);
              std::size_t to = intern(next);
              lts_.edges[id].push_back({true, {}, to});
              work.push_back(to);
            }
          }
        }
      }
    }
  }

  const CcsLts& lts() const { return lts_; }
  std::size_t size() const { return states_.size(); }

 private:
  std::size_t cap_;
  std::map<std::string, std::size_t> index_;
  std::vector<CcsState> states_;
  std::vector<bool> expanded_;
  CcsLts lts_;
};

CcsState state_of(const ProcessPtr& p) {
  CcsState s;
  if (p->as_par()) {
    for (const auto& [_, c] : p->as_par()->components) s.push_back(c);
  } else {
    s.push_back(p);
  }
  return s;
}

std::vector<std::vector<bool>> tau_reach(const CcsLts& lts) {
  std::size_t n = lts.edges.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    std::deque<std::size_t> work{i};
    r[i][i] = true;
    while (!work.empty()) {
      std::size_t cur = work.front();
      work.pop_front();
      for (const auto& e : lts.edges[cur])
        if (e.tau && !r[i][e.to]) {
          r[i][e.to] = true;
          work.push_back(e.to);
        }
    }
  }
  return r;
}

}  // namespace

Verdict ccs_weak_bisimilar(const ProcessPtr& p, const ProcessPtr& q, std::size_t state_cap) {
  require_ccs_fragment(p);
  require_ccs_fragment(q);

  CcsExplorer ex(state_cap);
  std::size_t rp, rq;
  try {
    rp = ex.intern(state_of(p));
    rq = ex.intern(state_of(q));
    ex.explore(rp);
    ex.explore(rq);
  } catch (const StateSpaceExceeded&) {
    return {VerdictResult::Unknown, Witness{"transition", "state cap exceeded", {}}};
  }

  const CcsLts& lts = ex.lts();
  std::size_t n = ex.size();
  std::vector<std::vector<bool>> taustar = tau_reach(lts);

  // Weak arrows, precomputed: s => t (tau*), s =a=> t (tau* a tau*).
  std::set<PrefixSymbol> labels;
  for (const auto& es : lts.edges)
    for (const auto& e : es)
      if (!e.tau) labels.insert(e.label);
  std::map<PrefixSymbol, std::vector<std::vector<bool>>> weak;
  for (const PrefixSymbol& a : labels) {
    auto& m = weak[a];
    m.assign(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t mid = 0; mid < n; ++mid) {
        if (!taustar[s][mid]) continue;
        for (const auto& e : lts.edges[mid]) {
          if (e.tau || e.label != a) continue;
          for (std::size_t t = 0; t < n; ++t)
            if (taustar[e.to][t]) m[s][t] = true;
        }
      }
  }

  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!rel[i][j]) continue;
        bool ok = true;
        // Challenges from i answered by weak arrows from j, and symmetrically.
        for (int side = 0; side < 2 && ok; ++side) {
          std::size_t s = side == 0 ? i : j;
          std::size_t t = side == 0 ? j : i;
          for (const auto& e : lts.edges[s]) {
            bool found = false;
            if (e.tau) {
              for (std::size_t t2 = 0; t2 < n && !found; ++t2)
                if (taustar[t][t2] && (side == 0 ? rel[e.to][t2] : rel[t2][e.to])) found = true;
            } else {
              const auto& targets = weak.at(e.label)[t];
              for (std::size_t t2 = 0; t2 < n && !found; ++t2)
                if (targets[t2] && (side == 0 ? rel[e.to][t2] : rel[t2][e.to])) found = true;
            }
            if (!found) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) {
          rel[i][j] = false;
          changed = true;
        }
      }
    }
  }

  if (rel[rp][rq]) return {VerdictResult::Yes, std::nullopt};
  return {VerdictResult::No,
          Witness{"transition", "classical weak bisimulation game refutes the pair", {}}};
}

}  // namespace tccs
