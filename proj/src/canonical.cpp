#include "tccs/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "tccs/errors.hpp"

namespace tccs {

Location map_apply(const LocationMap& m, Location p) {
  auto it = std::lower_bound(m.begin(), m.end(), p,
                             [](const auto& e, Location l) { return e.first < l; });
  if (it == m.end() || it->first != p) throw Error("location map: not in domain");
  return it->second;
}

LocationMap map_invert(const LocationMap& m) {
  LocationMap out;
  out.reserve(m.size());
  for (const auto& [a, b] : m) out.emplace_back(b, a);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Env = std::vector<std::string>;  // mu-binder stack, innermost last

std::string var_token(const Env& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (env[i] == name) return "b" + std::to_string(env.size() - 1 - i);
  return "f:" + name;
}

// ---------------------------------------------------------------------------
// Canonical labeling of a vertex-colored graph.
//
// Equitable refinement followed by individualization on the first cell that
// is not interchangeable. Stable partitions whose cells are uniformly
// connected (all-or-nothing between and inside cells) need no branching at
// all, which covers the common shapes here (sums of blocks, full
// compositions). A node cap guards the rest.
// ---------------------------------------------------------------------------

struct ColoredGraph {
  std::size_t n = 0;
  std::vector<int> color;               // initial color id per vertex
  std::vector<std::vector<bool>> adj;   // symmetric, no loops
};

using Partition = std::vector<std::vector<int>>;  // ordered cells of vertex indices

Partition initial_partition(const ColoredGraph& g) {
  int maxc = 0;
  for (int c : g.color) maxc = std::max(maxc, c);
  Partition cells(static_cast<std::size_t>(maxc) + 1);
  for (std::size_t v = 0; v < g.n; ++v) cells[g.color[v]].push_back(static_cast<int>(v));
  Partition out;
  for (auto& c : cells)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

Partition refine(const ColoredGraph& g, Partition cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    Partition next;
    std::vector<int> cell_of(g.n);
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
      for (int v : cells[ci]) cell_of[v] = static_cast<int>(ci);
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      // Signature of v: neighbor count per current cell.
      std::map<std::vector<int>, std::vector<int>> split;
      for (int v : cell) {
        std::vector<int> sig(cells.size(), 0);
        for (std::size_t u = 0; u < g.n; ++u)
          if (g.adj[v][u]) sig[cell_of[u]]++;
        split[sig].push_back(v);
      }
      if (split.size() > 1) changed = true;
      for (auto& [_, part] : split) next.push_back(std::move(part));
    }
    cells = std::move(next);
  }
  return cells;
}

// True if within-cell and cross-cell adjacency is all-or-nothing, in which
// case every within-cell order yields the same canonical matrix.
bool uniform(const ColoredGraph& g, const Partition& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i; j < cells.size(); ++j) {
      std::size_t count = 0, total = 0;
      for (int v : cells[i])
        for (int u : cells[j]) {
          if (i == j && u <= v) continue;
          ++total;
          if (g.adj[v][u]) ++count;
        }
      if (count != 0 && count != total) return false;
    }
  }
  return true;
}

struct CanonSearch {
  explicit CanonSearch(const ColoredGraph& graph) : g(graph) {}

  const ColoredGraph& g;
  std::size_t node_cap = 20'000;
  std::size_t nodes = 0;
  std::vector<int> best_order;
  std::string best_code;

  std::string encode(const std::vector<int>& order) const {
    std::string code;
    code.reserve(g.n * g.n / 4 + g.n * 4);
    for (int v : order) {
      code += std::to_string(g.color[v]);
      code += ',';
    }
    code += '|';
    std::vector<int> pos(g.n);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = i + 1; j < g.n; ++j)
        if (g.adj[order[i]][order[j]]) {
          code += std::to_string(i);
          code += '-';
          code += std::to_string(j);
          code += ';';
        }
    return code;
  }

  void consider(const Partition& cells) {
    std::vector<int> order;
    for (const auto& c : cells) order.insert(order.end(), c.begin(), c.end());
    std::string code = encode(order);
    if (best_code.empty() || code < best_code) {
      best_code = std::move(code);
      best_order = std::move(order);
    }
  }

  void search(Partition cells) {
    if (++nodes > node_cap) throw WebTooLarge("canonical labeling search exceeded node cap");
    cells = refine(g, cells);
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1) {
        target = i;
        break;
      }
    if (target == cells.size() || uniform(g, cells)) {
      consider(cells);
      return;
    }
    for (int v : cells[target]) {
      Partition next;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != target) {
          next.push_back(cells[i]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        for (int u : cells[i])
          if (u != v) rest.push_back(u);
        next.push_back(std::move(rest));
      }
      search(std::move(next));
    }
  }
};

// ---------------------------------------------------------------------------
// Canonical keys
// ---------------------------------------------------------------------------

struct Keyer {
  std::size_t iso_bound;

  std::string key(const ProcessPtr& p, Env& env, std::vector<Location>* top_order) {
    if (const auto* v = p->as_var()) return "v(" + var_token(env, v->name) + ")";
    if (p->as_zero()) return "z";
    if (const auto* f = p->as_fix()) {
      env.push_back(f->var);
      std::string k = key(f->body, env, nullptr);
      env.pop_back();
      return "u(" + k + ")";
    }
    if (const auto* pr = p->as_prefix()) {
      std::string k = "p(";
      k += pr->symbol.is_co() ? "~" : "";
      k += pr->symbol.name;
      for (const auto& a : pr->args) {
        k += ";";
        k += key(a, env, nullptr);
      }
      return k + ")";
    }
    if (const auto* s = p->as_sum())
      return "s(" + key(s->left, env, nullptr) + "," + key(s->right, env, nullptr) + ")";
    if (const auto* r = p->as_restrict()) {
      std::string k = "r{";
      for (const auto& h : r->hidden) k += h + ",";
      return k + "}(" + key(r->body, env, top_order) + ")";
    }
    return par_key(*p->as_par(), env, top_order);
  }

  std::string par_key(const ParNode& par, Env& env, std::vector<Location>* top_order) {
    const auto& web = par.graph.web();
    std::size_t n = web.size();
    if (n > iso_bound)
      throw WebTooLarge("web of size " + std::to_string(n) + " exceeds iso bound " +
                        std::to_string(iso_bound));
    if (n == 0) {
      if (top_order) top_order->clear();
      return "g0[]";
    }

    std::vector<std::string> comp_keys(n);
    for (std::size_t i = 0; i < n; ++i)
      comp_keys[i] = key(par.components[i].second, env, nullptr);

    std::vector<std::string> sorted_keys = comp_keys;
    std::sort(sorted_keys.begin(), sorted_keys.end());
    sorted_keys.erase(std::unique(sorted_keys.begin(), sorted_keys.end()), sorted_keys.end());

    ColoredGraph g;
    g.n = n;
    g.color.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      g.color[i] = static_cast<int>(
          std::lower_bound(sorted_keys.begin(), sorted_keys.end(), comp_keys[i]) -
          sorted_keys.begin());
    g.adj.assign(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : par.graph.edges()) {
      std::size_t i = std::lower_bound(web.begin(), web.end(), a) - web.begin();
      std::size_t j = std::lower_bound(web.begin(), web.end(), b) - web.begin();
      g.adj[i][j] = g.adj[j][i] = true;
    }

    CanonSearch cs(g);
    cs.search(initial_partition(g));

    if (top_order) {
      top_order->clear();
      for (int v : cs.best_order) top_order->push_back(web[v]);
    }
    std::string k = "g" + std::to_string(n) + "[";
    for (int v : cs.best_order) {
      k += comp_keys[v];
      k += "!";
    }
    k += "|";
    // Edge part of the canonical code (positions under best_order).
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[cs.best_order[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (const auto& [a, b] : par.graph.edges()) {
      int i = pos[std::lower_bound(web.begin(), web.end(), a) - web.begin()];
      int j = pos[std::lower_bound(web.begin(), web.end(), b) - web.begin()];
      es.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(es.begin(), es.end());
    for (const auto& [i, j] : es) k += std::to_string(i) + "-" + std::to_string(j) + ";";
    return k + "]";
  }
};

// ---------------------------------------------------------------------------
// Relabeling-invariant hash
// ---------------------------------------------------------------------------

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_str(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t ahash(const ProcessPtr& p, Env& env) {
  if (const auto* v = p->as_var()) return mix(0xA1, hash_str(var_token(env, v->name)));
  if (p->as_zero()) return 0xB2;
  if (const auto* f = p->as_fix()) {
    env.push_back(f->var);
    std::uint64_t h = mix(0xC3, ahash(f->body, env));
    env.pop_back();
    return h;
  }
  if (const auto* pr = p->as_prefix()) {
    std::uint64_t h = mix(0xD4, hash_str(pr->symbol.name));
    h = mix(h, pr->symbol.is_co() ? 2 : 1);
    for (const auto& a : pr->args) h = mix(h, ahash(a, env));
    return h;
  }
  if (const auto* s = p->as_sum()) {
    std::uint64_t h = mix(0xE5, ahash(s->left, env));
    return mix(h, ahash(s->right, env));
  }
  if (const auto* r = p->as_restrict()) {
    std::uint64_t h = 0xF6;
    for (const auto& n : r->hidden) h = mix(h, hash_str(n));
    return mix(h, ahash(r->body, env));
  }
  const auto* par = p->as_par();
  const auto& web = par->graph.web();
  std::vector<std::uint64_t> ch(web.size());
  for (std::size_t i = 0; i < web.size(); ++i) ch[i] = ahash(par->components[i].second, env);
  std::uint64_t h = mix(0x17, web.size());
  // Order-independent accumulation over vertices and edges.
  std::uint64_t vsum = 0;
  for (std::size_t i = 0; i < web.size(); ++i) {
    std::size_t deg = par->graph.neighbors(web[i]).size();
    vsum += mix(ch[i], deg * 31 + 7);
  }
  std::uint64_t esum = 0;
  for (const auto& [a, b] : par->graph.edges()) {
    std::size_t i = std::lower_bound(web.begin(), web.end(), a) - web.begin();
    std::size_t j = std::lower_bound(web.begin(), web.end(), b) - web.begin();
    esum += mix(0x29, ch[i] + ch[j]) + mix(0x31, ch[i] * ch[j]);
  }
  h = mix(h, vsum);
  h = mix(h, esum);
  return h;
}

// ---------------------------------------------------------------------------
// Structural alpha-equality and isomorphism enumeration
// ---------------------------------------------------------------------------

struct IsoSearch {
  IsoSearch(const ParNode& left, const ParNode& right, std::size_t lim)
      : a(left), b(right), limit(lim) {}

  const ParNode& a;
  const ParNode& b;
  std::size_t limit;
  std::size_t node_cap = 200'000;
  std::size_t nodes = 0;
  std::vector<int> aclass, bclass;  // alpha classes of components
  std::vector<int> assign;          // a-index -> b-index or -1
  std::vector<bool> used;
  std::vector<LocationMap> found;

  bool adjacent_a(int i, int j) const {
    return a.graph.adjacent(a.graph.web()[i], a.graph.web()[j]);
  }
  bool adjacent_b(int i, int j) const {
    return b.graph.adjacent(b.graph.web()[i], b.graph.web()[j]);
  }

  void run() {
    std::size_t n = a.graph.web().size();
    assign.assign(n, -1);
    used.assign(n, false);
    backtrack(0);
  }

  void backtrack(std::size_t i) {
    if (found.size() >= limit) return;
    if (++nodes > node_cap) throw StateSpaceExceeded("isomorphism search exceeded node cap");
    std::size_t n = a.graph.web().size();
    if (i == n) {
      LocationMap m;
      for (std::size_t k = 0; k < n; ++k)
        m.emplace_back(a.graph.web()[k], b.graph.web()[assign[k]]);
      std::sort(m.begin(), m.end());
      found.push_back(std::move(m));
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || aclass[i] != bclass[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i; ++k)
        if (adjacent_a(static_cast<int>(i), static_cast<int>(k)) !=
            adjacent_b(static_cast<int>(j), assign[k])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      assign[i] = static_cast<int>(j);
      used[j] = true;
      backtrack(i + 1);
      used[j] = false;
      assign[i] = -1;
      if (found.size() >= limit) return;
    }
  }
};

bool aeq(const ProcessPtr& a, const ProcessPtr& b, Env& ea, Env& eb);

// Computes alpha classes across the components of both sides; returns false
// if the component multisets cannot match.
bool component_classes(const ParNode& a, const ParNode& b, Env& ea, Env& eb,
                       std::vector<int>& ca, std::vector<int>& cb) {
  std::size_t n = a.components.size();
  if (b.components.size() != n) return false;
  ca.resize(n);
  cb.resize(n);
  // Classes must be computed with each side's own env. Compare pairwise.
  std::vector<const ProcessPtr*> arep;
  for (std::size_t i = 0; i < n; ++i) {
    int cls = -1;
    for (std::size_t r = 0; r < arep.size(); ++r)
      if (aeq(a.components[i].second, *arep[r], ea, ea)) {
        cls = static_cast<int>(r);
        break;
      }
    if (cls < 0) {
      arep.push_back(&a.components[i].second);
      cls = static_cast<int>(arep.size() - 1);
    }
    ca[i] = cls;
  }
  for (std::size_t j = 0; j < n; ++j) {
    int cls = -1;
    for (std::size_t r = 0; r < arep.size(); ++r)
      if (aeq(b.components[j].second, *arep[r], eb, ea)) {
        cls = static_cast<int>(r);
        break;
      }
    if (cls < 0) return false;  // a component of b matches nothing in a
    cb[j] = cls;
  }
  // Multiset check per class.
  std::vector<int> na(arep.size(), 0), nb(arep.size(), 0);
  for (int c : ca) na[c]++;
  for (int c : cb) nb[c]++;
  return na == nb;
}

std::vector<LocationMap> par_iso_impl(const ParNode& a, const ParNode& b, Env& ea, Env& eb,
                                      std::size_t limit) {
  if (a.components.size() != b.components.size()) return {};
  if (a.graph.edges().size() != b.graph.edges().size()) return {};
  IsoSearch s(a, b, limit);
  if (!component_classes(a, b, ea, eb, s.aclass, s.bclass)) return {};
  s.run();
  return std::move(s.found);
}

bool aeq(const ProcessPtr& a, const ProcessPtr& b, Env& ea, Env& eb) {
  if (a.get() == b.get() && ea == eb) return true;
  if (const auto* va = a->as_var()) {
    const auto* vb = b->as_var();
    return vb && var_token(ea, va->name) == var_token(eb, vb->name);
  }
  if (a->as_zero()) return b->as_zero() != nullptr;
  if (const auto* fa = a->as_fix()) {
    const auto* fb = b->as_fix();
    if (!fb) return false;
    ea.push_back(fa->var);
    eb.push_back(fb->var);
    bool r = aeq(fa->body, fb->body, ea, eb);
    ea.pop_back();
    eb.pop_back();
    return r;
  }
  if (const auto* pa = a->as_prefix()) {
    const auto* pb = b->as_prefix();
    if (!pb || pa->symbol != pb->symbol || pa->args.size() != pb->args.size()) return false;
    for (std::size_t i = 0; i < pa->args.size(); ++i)
      if (!aeq(pa->args[i], pb->args[i], ea, eb)) return false;
    return true;
  }
  if (const auto* sa = a->as_sum()) {
    const auto* sb = b->as_sum();
    return sb && aeq(sa->left, sb->left, ea, eb) && aeq(sa->right, sb->right, ea, eb);
  }
  if (const auto* ra = a->as_restrict()) {
    const auto* rb = b->as_restrict();
    return rb && ra->hidden == rb->hidden && aeq(ra->body, rb->body, ea, eb);
  }
  const auto* qa = a->as_par();
  const auto* qb = b->as_par();
  if (!qb) return false;
  return !par_iso_impl(*qa, *qb, ea, eb, 1).empty();
}

}  // namespace

CanonicalForm canonical_form(const ProcessPtr& p, std::size_t iso_bound) {
  Keyer k{iso_bound};
  Env env;
  CanonicalForm cf;
  cf.key = k.key(p, env, &cf.order);
  return cf;
}

std::uint64_t alpha_hash(const ProcessPtr& p) {
  Env env;
  return ahash(p, env);
}

bool alpha_equal(const ProcessPtr& a, const ProcessPtr& b) {
  Env ea, eb;
  return aeq(a, b, ea, eb);
}

std::vector<LocationMap> par_isomorphisms(const ProcessPtr& a, const ProcessPtr& b,
                                          std::size_t limit) {
  if (restriction_set(a) != restriction_set(b)) return {};
  if (!is_located(a) || !is_located(b)) return {};
  Env ea, eb;
  return par_iso_impl(located_par(a), located_par(b), ea, eb, limit);
}

StateIndex::Entry StateIndex::intern(const ProcessPtr& p) {
  auto identity_map = [&]() {
    LocationMap m;
    if (is_located(p))
      for (Location l : web_of(p)) m.emplace_back(l, l);
    return m;
  };
  try {
    CanonicalForm cf = canonical_form(p, iso_bound_);
    auto it = by_key_.find(cf.key);
    if (it == by_key_.end()) {
      by_key_.emplace(cf.key, std::pair{p, cf.order});
      ++count_;
      return {p, identity_map(), true};
    }
    const auto& [rep, rep_order] = it->second;
    if (rep.get() == p.get()) return {rep, identity_map(), false};
    LocationMap m;
    for (std::size_t i = 0; i < cf.order.size(); ++i) m.emplace_back(cf.order[i], rep_order[i]);
    std::sort(m.begin(), m.end());
    return {rep, std::move(m), false};
  } catch (const WebTooLarge&) {
    std::uint64_t h = alpha_hash(p);
    auto& bucket = buckets_[h];
    for (const ProcessPtr& cand : bucket) {
      if (cand.get() == p.get()) return {cand, identity_map(), false};
      auto isos = par_isomorphisms(p, cand, 1);
      if (!isos.empty()) return {cand, std::move(isos.front()), false};
    }
    bucket.push_back(p);
    ++count_;
    return {p, identity_map(), true};
  }
}

}  // namespace tccs
