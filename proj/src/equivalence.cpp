#include "tccs/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "tccs/errors.hpp"
#include "tccs/pretty.hpp"
#include "tccs/syntax_ops.hpp"

namespace tccs {

// ---------------------------------------------------------------------------
// Location relations
// ---------------------------------------------------------------------------

LocRel rel_normalize(LocRel r) {
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

LocRel rel_transpose(const LocRel& r) {
  LocRel out;
  out.reserve(r.size());
  for (const auto& [a, b] : r) out.emplace_back(b, a);
  return rel_normalize(std::move(out));
}

LocRel rel_compose(const LocRel& first, const LocRel& then) {
  LocRel out;
  for (const auto& [a, b] : first)
    for (const auto& [c, d] : then)
      if (b == c) out.emplace_back(a, d);
  return rel_normalize(std::move(out));
}

bool rel_contains(const LocRel& r, Location a, Location b) {
  return std::binary_search(r.begin(), r.end(), std::pair{a, b});
}

LocRel rel_identity(std::span<const Location> web) {
  LocRel out;
  out.reserve(web.size());
  for (Location l : web) out.emplace_back(l, l);
  return out;
}

LocRel rel_full(std::span<const Location> a, std::span<const Location> b) {
  LocRel out;
  out.reserve(a.size() * b.size());
  for (Location x : a)
    for (Location y : b) out.emplace_back(x, y);
  return out;
}

std::string to_string(VerdictResult r) {
  switch (r) {
    case VerdictResult::Yes: return "yes";
    case VerdictResult::No: return "no";
    case VerdictResult::Unknown: return "unknown";
  }
  return "?";
}

LocalizedRelation symmetrize(const LocalizedRelation& r) {
  LocalizedRelation out = r;
  for (const auto& t : r.triples) out.triples.push_back({t.right, rel_transpose(t.rel), t.left});
  // Dedup by identity of the pieces.
  std::sort(out.triples.begin(), out.triples.end(), [](const auto& a, const auto& b) {
    if (a.left.get() != b.left.get()) return a.left.get() < b.left.get();
    if (a.right.get() != b.right.get()) return a.right.get() < b.right.get();
    return a.rel < b.rel;
  });
  out.triples.erase(std::unique(out.triples.begin(), out.triples.end(),
                                [](const auto& a, const auto& b) {
                                  return a.left.get() == b.left.get() &&
                                         a.right.get() == b.right.get() && a.rel == b.rel;
                                }),
                    out.triples.end());
  return out;
}

LocalizedRelation identity_relation(std::span<const ProcessPtr> corpus) {
  LocalizedRelation out;
  for (const ProcessPtr& u : corpus)
    out.triples.push_back({u, rel_identity(web_of(u)), u});
  return out;
}

// ---------------------------------------------------------------------------
// Game cache: strong challenges and weak response arrows between interned
// representatives, with spawn patterns and composite residuals:
// everything the conditions on residuals can observe.
// ---------------------------------------------------------------------------

namespace {

struct LabChallenge {
  PrefixSymbol symbol;
  Location at;
  std::size_t arity = 0;
  ProcessPtr target;      // representative
  ResidualFn composite;   // web(target) -> web(source)
  std::vector<int> pattern;  // spawn index per web(target) position, -1 outside
  std::string desc;
};

struct Arrow {
  ProcessPtr target;      // representative
  ResidualFn composite;   // web(target) -> web(source)
  Location anchor{};      // labeled only: rho(firing location), in web(source)
  std::vector<int> pattern;  // labeled only
};

struct ArrowSet {
  std::vector<Arrow> arrows;
  bool complete = true;
};

int pattern_at(const std::vector<int>& pattern, const std::vector<Location>& web, Location l) {
  auto it = std::lower_bound(web.begin(), web.end(), l);
  return pattern[static_cast<std::size_t>(it - web.begin())];
}

class GameCache {
 public:
  GameCache(Workspace& ws, std::size_t bound, const CheckOptions& opts)
      : ws_(ws), bound_(bound), opts_(opts) {}

  Workspace& workspace() { return ws_; }
  const CheckOptions& options() const { return opts_; }

  const TauClosure& closure(const ProcessPtr& rep) {
    auto it = closures_.find(rep.get());
    if (it != closures_.end()) return it->second;
    TauClosure c = tau_closure(ws_, rep, bound_, opts_.state_cap);
    return closures_.emplace(rep.get(), std::move(c)).first->second;
  }

  const std::vector<LabChallenge>& strong_labeled(const ProcessPtr& rep) {
    auto it = strong_lab_.find(rep.get());
    if (it != strong_lab_.end()) return it->second;
    std::vector<LabChallenge> out;
    for (const LabeledTransition& lt : labeled_transitions(ws_, rep)) {
      StateIndex::Entry e = ws_.intern(lt.target);
      LocationMap back = map_invert(e.to_rep);  // web(rep target) -> web(raw target)
      LabChallenge ch;
      ch.symbol = lt.symbol;
      ch.at = lt.at;
      ch.arity = lt.spawned.size();
      ch.target = e.rep;
      ch.composite = lt.residual.precompose_iso(back);
      for (Location l : web_of(e.rep)) {
        Location raw = map_apply(back, l);
        int idx = -1;
        for (std::size_t i = 0; i < lt.spawned.size(); ++i)
          if (std::binary_search(lt.spawned[i].begin(), lt.spawned[i].end(), raw)) {
            idx = static_cast<int>(i);
            break;
          }
        ch.pattern.push_back(idx);
      }
      ch.desc = lt.symbol.display() + " at " + to_string(lt.at);
      out.push_back(std::move(ch));
    }
    return strong_lab_.emplace(rep.get(), std::move(out)).first->second;
  }

  const ArrowSet& weak_tau(const ProcessPtr& rep) {
    auto it = weak_tau_.find(rep.get());
    if (it != weak_tau_.end()) return it->second;
    const TauClosure& c = closure(rep);
    ArrowSet s;
    s.complete = c.complete;
    for (const auto& e : c.entries) s.arrows.push_back({e.state, e.residual, {}, {}});
    return weak_tau_.emplace(rep.get(), std::move(s)).first->second;
  }

  const ArrowSet& weak_labeled(const ProcessPtr& rep, const PrefixSymbol& sym) {
    auto key = std::pair{rep.get(), sym};
    auto it = weak_lab_.find(key);
    if (it != weak_lab_.end()) return it->second;

    ArrowSet s;
    const TauClosure& pre = closure(rep);
    s.complete = pre.complete;
    struct Sig {
      const Process* target;
      Location anchor;
      LocationMap composite;
      std::vector<int> pattern;
      auto operator<=>(const Sig&) const = default;
    };
    std::set<Sig> seen;
    for (const auto& mid : pre.entries) {
      for (const LabChallenge& lab : strong_labeled(mid.state)) {
        if (lab.symbol != sym) continue;
        const TauClosure& post = closure(lab.target);
        s.complete = s.complete && post.complete;
        const auto& lab_web = web_of(lab.target);
        for (const auto& fin : post.entries) {
          Arrow a;
          a.target = fin.state;
          a.anchor = mid.residual(lab.at);
          a.composite = ResidualFn::compose(ResidualFn::compose(mid.residual, lab.composite),
                                            fin.residual);
          for (Location l : web_of(fin.state))
            a.pattern.push_back(pattern_at(lab.pattern, lab_web, fin.residual(l)));
          Sig sig{a.target.get(), a.anchor, a.composite.pairs(), a.pattern};
          if (seen.insert(sig).second) s.arrows.push_back(std::move(a));
        }
      }
    }
    return weak_lab_.emplace(key, std::move(s)).first->second;
  }

  const std::vector<LocationMap>& automorphisms(const ProcessPtr& rep, bool* truncated) {
    auto it = autos_.find(rep.get());
    if (it == autos_.end()) {
      auto isos = par_isomorphisms(rep, rep, opts_.iso_limit);
      bool cut = isos.size() >= opts_.iso_limit;
      it = autos_.emplace(rep.get(), std::pair{std::move(isos), cut}).first;
    }
    if (truncated) *truncated = *truncated || it->second.second;
    return it->second.first;
  }

 private:
  Workspace& ws_;
  std::size_t bound_;
  CheckOptions opts_;
  std::map<const Process*, TauClosure> closures_;
  std::map<const Process*, std::vector<LabChallenge>> strong_lab_;
  std::map<const Process*, ArrowSet> weak_tau_;
  std::map<std::pair<const Process*, PrefixSymbol>, ArrowSet> weak_lab_;
  std::map<const Process*, std::pair<std::vector<LocationMap>, bool>> autos_;
};

// The largest E' compatible with the conditions on residuals: pairs whose
// composite images are related in E, with matching spawn indices when the
// fired arity is >= 2. Any admissible E' is contained in it, and a triple
// holding with a smaller E' also holds with this one.
LocRel emax(const std::vector<Location>& chal_web, const ResidualFn& chal_comp,
            const std::vector<int>* chal_pattern, const std::vector<Location>& resp_web,
            const ResidualFn& resp_comp, const std::vector<int>* resp_pattern, bool dichotomy,
            const LocRel& e, bool challenge_is_left) {
  LocRel out;
  for (std::size_t i = 0; i < chal_web.size(); ++i) {
    for (std::size_t j = 0; j < resp_web.size(); ++j) {
      Location cl = chal_web[i], rl = resp_web[j];
      Location csrc = chal_comp(cl), rsrc = resp_comp(rl);
      bool in_e = challenge_is_left ? rel_contains(e, csrc, rsrc) : rel_contains(e, rsrc, csrc);
      if (!in_e) continue;
      if (dichotomy && (*chal_pattern)[i] != (*resp_pattern)[j]) continue;
      if (challenge_is_left)
        out.emplace_back(cl, rl);
      else
        out.emplace_back(rl, cl);
    }
  }
  return rel_normalize(std::move(out));
}

std::string side_name(bool left) { return left ? "left" : "right"; }

}  // namespace

// ---------------------------------------------------------------------------
// On-the-fly bisimilarity
// ---------------------------------------------------------------------------

namespace {

struct GameNode {
  ProcessPtr left;
  ProcessPtr right;
  LocRel rel;

  struct Edge {
    std::string desc;        // challenge description, for witnesses
    bool maybe_more = false; // response enumeration truncated
    std::vector<std::size_t> candidates;  // successor node ids
  };
  std::vector<Edge> challenges;
  bool expanded = false;
};

class BisimGame {
 public:
  BisimGame(GameCache& cache) : cache_(cache) {}

  std::size_t node_id(const ProcessPtr& l, const ProcessPtr& r, LocRel e) {
    auto key = std::tuple{l.get(), r.get(), e};
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    std::size_t id = nodes_.size();
    ids_.emplace(std::move(key), id);
    nodes_.push_back({l, r, std::move(e), {}, false});
    return id;
  }

  // Expands all nodes reachable from the root. Returns false if the node cap
  // was hit.
  bool expand_all(std::size_t root) {
    std::deque<std::size_t> work{root};
    while (!work.empty()) {
      std::size_t id = work.front();
      work.pop_front();
      if (nodes_[id].expanded) continue;
      if (nodes_.size() > cache_.options().triple_cap) return false;
      expand(id, work);
    }
    return true;
  }

  const std::vector<GameNode>& nodes() const { return nodes_; }

  // Greatest-fixpoint deletion. When `pessimistic`, challenges whose
  // response enumeration may be incomplete never fail, so deletion is
  // definitive.
  std::vector<bool> solve(bool pessimistic) const {
    std::vector<bool> alive(nodes_.size(), true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!alive[i]) continue;
        for (const auto& ch : nodes_[i].challenges) {
          if (pessimistic && ch.maybe_more) continue;
          bool answered = false;
          for (std::size_t c : ch.candidates)
            if (alive[c]) {
              answered = true;
              break;
            }
          if (!answered) {
            alive[i] = false;
            changed = true;
            break;
          }
        }
      }
    }
    return alive;
  }

  // The first failing challenge of a dead node under `alive`.
  std::optional<Witness> failing_challenge(std::size_t id, const std::vector<bool>& alive,
                                           bool pessimistic) const {
    for (const auto& ch : nodes_[id].challenges) {
      if (pessimistic && ch.maybe_more) continue;
      bool answered = false;
      for (std::size_t c : ch.candidates)
        if (alive[c]) answered = true;
      if (!answered) {
        Witness w;
        w.kind = "transition";
        w.detail = "unanswered challenge: " + ch.desc;
        return w;
      }
    }
    return std::nullopt;
  }

 private:
  void expand(std::size_t id, std::deque<std::size_t>& work) {
    nodes_[id].expanded = true;
    ProcessPtr left = nodes_[id].left;
    ProcessPtr right = nodes_[id].right;
    const LocRel rel = nodes_[id].rel;

    for (bool left_side : {true, false}) {
      const ProcessPtr& chal_proc = left_side ? left : right;
      const ProcessPtr& resp_proc = left_side ? right : left;

      // Tau challenges: one reduction step, answered by weak tau arrows.
      for (const TauSucc& t : cache_.workspace().tau_successors(chal_proc)) {
        GameNode::Edge edge;
        edge.desc = side_name(left_side) + " does tau (" + t.symbol.display() + " interaction)";
        const ArrowSet& resp = cache_.weak_tau(resp_proc);
        edge.maybe_more = !resp.complete;
        for (const Arrow& a : resp.arrows) {
          LocRel e2 = emax(web_of(t.target), t.residual, nullptr, web_of(a.target), a.composite,
                           nullptr, false, rel, left_side);
          std::size_t succ = left_side ? node_id(t.target, a.target, std::move(e2))
                                       : node_id(a.target, t.target, std::move(e2));
          edge.candidates.push_back(succ);
          work.push_back(succ);
        }
        nodes_[id].challenges.push_back(std::move(edge));
      }

      // Labeled challenges: answered by weak arrows of the same symbol with
      // related anchors.
      for (const LabChallenge& ch : cache_.strong_labeled(chal_proc)) {
        GameNode::Edge edge;
        edge.desc = side_name(left_side) + " fires " + ch.desc;
        const ArrowSet& resp = cache_.weak_labeled(resp_proc, ch.symbol);
        edge.maybe_more = !resp.complete;
        for (const Arrow& a : resp.arrows) {
          bool anchored = left_side ? rel_contains(rel, ch.at, a.anchor)
                                    : rel_contains(rel, a.anchor, ch.at);
          if (!anchored) continue;
          LocRel e2 = emax(web_of(ch.target), ch.composite, &ch.pattern, web_of(a.target),
                           a.composite, &a.pattern, ch.arity >= 2, rel, left_side);
          std::size_t succ = left_side ? node_id(ch.target, a.target, std::move(e2))
                                       : node_id(a.target, ch.target, std::move(e2));
          edge.candidates.push_back(succ);
          work.push_back(succ);
        }
        nodes_[id].challenges.push_back(std::move(edge));
      }
    }
  }

  GameCache& cache_;
  std::vector<GameNode> nodes_;
  std::map<std::tuple<const Process*, const Process*, LocRel>, std::size_t> ids_;
};

void validate_rel(const LocRel& e, const ProcessPtr& p, const ProcessPtr& q) {
  const auto& wp = web_of(p);
  const auto& wq = web_of(q);
  for (const auto& [a, b] : e) {
    if (!std::binary_search(wp.begin(), wp.end(), a) ||
        !std::binary_search(wq.begin(), wq.end(), b))
      throw MalformedRelation("relation pair outside web(left) x web(right)");
  }
}

}  // namespace

BisimResult bisimilar(Workspace& ws, const ProcessPtr& p, const ProcessPtr& q, const LocRel& e,
                      std::size_t bound, const CheckOptions& opts) {
  ProcessPtr lp = located(p);
  ProcessPtr lq = located(q);
  LocRel en = rel_normalize(e);
  validate_rel(en, lp, lq);

  StateIndex::Entry ep = ws.intern(lp);
  StateIndex::Entry eq = ws.intern(lq);
  LocRel erel;
  for (const auto& [a, b] : en)
    erel.emplace_back(map_apply(ep.to_rep, a), map_apply(eq.to_rep, b));
  erel = rel_normalize(std::move(erel));

  GameCache cache(ws, bound, opts);
  BisimGame game(cache);
  std::size_t root = game.node_id(ep.rep, eq.rep, erel);
  BisimResult out;
  bool full = false;
  try {
    full = game.expand_all(root);
  } catch (const StateSpaceExceeded& e) {
    out.verdict = {VerdictResult::Unknown, Witness{"triple", std::string("search aborted: ") + e.what(), {}}};
    return out;
  }
  if (!full) {
    out.verdict = {VerdictResult::Unknown, Witness{"triple", "triple cap exceeded", {}}};
    return out;
  }

  std::vector<bool> optimistic = game.solve(false);
  if (optimistic[root]) {
    out.verdict.result = VerdictResult::Yes;
    for (std::size_t i = 0; i < game.nodes().size(); ++i)
      if (optimistic[i] && game.nodes()[i].expanded)
        out.relation.triples.push_back(
            {game.nodes()[i].left, game.nodes()[i].rel, game.nodes()[i].right});
    out.relation = symmetrize(out.relation);
    return out;
  }

  std::vector<bool> pessimistic = game.solve(true);
  if (!pessimistic[root]) {
    out.verdict.result = VerdictResult::No;
    out.verdict.witness = game.failing_challenge(root, pessimistic, true);
    if (!out.verdict.witness)
      out.verdict.witness = Witness{"triple", "root triple refuted", {}};
    return out;
  }

  out.verdict = {VerdictResult::Unknown,
                 Witness{"triple", "search bounds exhausted before a verdict", {}}};
  return out;
}

// ---------------------------------------------------------------------------
// Checking a given localized relation
// ---------------------------------------------------------------------------

Verdict check_localized_bisimulation(Workspace& ws, const LocalizedRelation& r,
                                     std::size_t bound, const CheckOptions& opts) {
  // Intern all triples, re-expressing the relations on representatives.
  struct Member {
    ProcessPtr left;
    ProcessPtr right;
    LocRel rel;
  };
  std::vector<Member> members;
  std::map<std::pair<const Process*, const Process*>, std::vector<std::size_t>> by_pair;

  LocalizedRelation sym = symmetrize(r);
  for (const auto& t : sym.triples) {
    ProcessPtr lt = located(t.left);
    ProcessPtr rt = located(t.right);
    LocRel rel = rel_normalize(t.rel);
    validate_rel(rel, lt, rt);
    StateIndex::Entry el = ws.intern(lt);
    StateIndex::Entry er = ws.intern(rt);
    LocRel rrel;
    for (const auto& [a, b] : rel)
      rrel.emplace_back(map_apply(el.to_rep, a), map_apply(er.to_rep, b));
    members.push_back({el.rep, er.rep, rel_normalize(std::move(rrel))});
    by_pair[{el.rep.get(), er.rep.get()}].push_back(members.size() - 1);
  }

  GameCache cache(ws, bound, opts);
  bool any_truncation = false;

  // Accepts a successor (target pair, E'max) if some member triple on the
  // same state pair embeds into E'max under some automorphism pair.
  auto member_supports = [&](const ProcessPtr& lrep, const ProcessPtr& rrep,
                             const LocRel& allowed) {
    auto it = by_pair.find({lrep.get(), rrep.get()});
    if (it == by_pair.end()) return false;
    bool iso_cut = false;
    const auto& lauto = cache.automorphisms(lrep, &iso_cut);
    const auto& rauto = cache.automorphisms(rrep, &iso_cut);
    any_truncation = any_truncation || iso_cut;
    for (std::size_t mi : it->second) {
      const LocRel& f = members[mi].rel;
      for (const LocationMap& la : lauto) {
        LocationMap la_inv = map_invert(la);
        for (const LocationMap& ra : rauto) {
          LocationMap ra_inv = map_invert(ra);
          bool ok = true;
          for (const auto& [x, y] : f) {
            if (!rel_contains(allowed, map_apply(la_inv, x), map_apply(ra_inv, y))) {
              ok = false;
              break;
            }
          }
          if (ok) return true;
        }
      }
    }
    return false;
  };

  try {
  for (const Member& m : members) {
    // Left-side challenges only: the symmetric closure covers the rest.
    for (const TauSucc& t : cache.workspace().tau_successors(m.left)) {
      const ArrowSet& resp = cache.weak_tau(m.right);
      any_truncation = any_truncation || !resp.complete;
      bool answered = false;
      for (const Arrow& a : resp.arrows) {
        LocRel allowed = emax(web_of(t.target), t.residual, nullptr, web_of(a.target),
                              a.composite, nullptr, false, m.rel, true);
        if (member_supports(t.target, a.target, allowed)) {
          answered = true;
          break;
        }
      }
      if (!answered) {
        if (resp.complete && !any_truncation)
          return {VerdictResult::No,
                  Witness{"transition",
                          "tau challenge (" + t.symbol.display() + " interaction) unanswered",
                          {{"process", pretty(m.left)}}}};
        return {VerdictResult::Unknown,
                Witness{"transition", "tau challenge undischarged within bounds", {}}};
      }
    }
    for (const LabChallenge& ch : cache.strong_labeled(m.left)) {
      const ArrowSet& resp = cache.weak_labeled(m.right, ch.symbol);
      any_truncation = any_truncation || !resp.complete;
      bool answered = false;
      for (const Arrow& a : resp.arrows) {
        if (!rel_contains(m.rel, ch.at, a.anchor)) continue;
        LocRel allowed = emax(web_of(ch.target), ch.composite, &ch.pattern, web_of(a.target),
                              a.composite, &a.pattern, ch.arity >= 2, m.rel, true);
        if (member_supports(ch.target, a.target, allowed)) {
          answered = true;
          break;
        }
      }
      if (!answered) {
        if (resp.complete && !any_truncation)
          return {VerdictResult::No,
                  Witness{"transition", "labeled challenge " + ch.desc + " unanswered",
                          {{"process", pretty(m.left)}}}};
        return {VerdictResult::Unknown,
                Witness{"transition", "labeled challenge undischarged within bounds", {}}};
      }
    }
  }
  } catch (const StateSpaceExceeded& e) {
    return {VerdictResult::Unknown,
            Witness{"transition", std::string("search aborted: ") + e.what(), {}}};
  }
  return {VerdictResult::Yes, std::nullopt};
}

// ---------------------------------------------------------------------------
// Adaptedness, composition, parallel extension
// ---------------------------------------------------------------------------

bool is_adapted(const LocRel& d, const LocRel& d2, const LocRel& e) {
  std::set<Location> as;
  for (const auto& [a, _] : d) as.insert(a);
  for (const auto& [a, _] : d2) as.insert(a);
  for (const auto& [b, b2] : e)
    for (Location a : as)
      if (rel_contains(d, a, b) != rel_contains(d2, a, b2)) return false;
  return true;
}

LocalizedRelation compose_localized(const LocalizedRelation& s, const LocalizedRelation& r,
                                    std::size_t iso_limit) {
  LocalizedRelation out;
  for (const auto& tr : r.triples) {
    for (const auto& ts : s.triples) {
      for (const LocationMap& theta : par_isomorphisms(tr.right, ts.left, iso_limit)) {
        LocRel mid;
        for (const auto& [a, b] : tr.rel) mid.emplace_back(a, map_apply(theta, b));
        LocRel h = rel_compose(rel_normalize(std::move(mid)), ts.rel);
        out.triples.push_back({tr.left, std::move(h), ts.right});
      }
    }
  }
  // Dedup.
  std::sort(out.triples.begin(), out.triples.end(), [](const auto& a, const auto& b) {
    if (a.left.get() != b.left.get()) return a.left.get() < b.left.get();
    if (a.right.get() != b.right.get()) return a.right.get() < b.right.get();
    return a.rel < b.rel;
  });
  out.triples.erase(std::unique(out.triples.begin(), out.triples.end(),
                                [](const auto& a, const auto& b) {
                                  return a.left.get() == b.left.get() &&
                                         a.right.get() == b.right.get() && a.rel == b.rel;
                                }),
                    out.triples.end());
  return out;
}

LocalizedRelation parallel_extension(const LocalizedRelation& r, const ProcessPtr& s,
                                     const LocRel& c, const LocRel& d) {
  if (!is_located(s)) throw Error("parallel_extension: observer must be located");
  const auto& sweb = web_of(s);
  LocalizedRelation out;
  for (const auto& t : r.triples) {
    if (!is_located(t.left) || !is_located(t.right))
      throw Error("parallel_extension: triple processes must be located");
    const auto& wp = web_of(t.left);
    const auto& wq = web_of(t.right);
    LocRel ct, dt;
    for (const auto& [x, y] : c)
      if (std::binary_search(sweb.begin(), sweb.end(), x) &&
          std::binary_search(wp.begin(), wp.end(), y))
        ct.emplace_back(x, y);
    for (const auto& [x, y] : d)
      if (std::binary_search(sweb.begin(), sweb.end(), x) &&
          std::binary_search(wq.begin(), wq.end(), y))
        dt.emplace_back(x, y);
    if (!is_adapted(ct, dt, t.rel))
      throw NotAdapted("parallel_extension: (C, D, E) not adapted for a triple");
    ProcessPtr u = gplus_proc(s, ct, t.left);
    ProcessPtr v = gplus_proc(s, dt, t.right);
    LocRel f = rel_identity(sweb);
    f.insert(f.end(), t.rel.begin(), t.rel.end());
    out.triples.push_back({std::move(u), rel_normalize(std::move(f)), std::move(v)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weak barbed bisimilarity on finite reduction graphs
// ---------------------------------------------------------------------------

namespace {

struct BarbedSide {
  ReductionGraph graph;
  std::vector<std::vector<std::size_t>> reach;       // reflexive-transitive successors
  std::vector<std::set<PrefixSymbol>> weak_barbs;    // union over reachable states
};

BarbedSide barbed_side(Workspace& ws, const ProcessPtr& p, std::size_t bound,
                       std::size_t state_cap) {
  BarbedSide side;
  side.graph = reduction_graph(ws, p, bound, state_cap);
  std::size_t n = side.graph.states.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : side.graph.edges) succ[e.from].push_back(e.to);
  side.reach.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> work{i};
    seen[i] = true;
    while (!work.empty()) {
      std::size_t cur = work.front();
      work.pop_front();
      side.reach[i].push_back(cur);
      for (std::size_t nx : succ[cur])
        if (!seen[nx]) {
          seen[nx] = true;
          work.push_back(nx);
        }
    }
    std::sort(side.reach[i].begin(), side.reach[i].end());
  }
  side.weak_barbs.resize(n);
  std::vector<std::set<PrefixSymbol>> strong(n);
  for (std::size_t i = 0; i < n; ++i) strong[i] = barbs(ws, side.graph.states[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : side.reach[i])
      side.weak_barbs[i].insert(strong[j].begin(), strong[j].end());
  return side;
}

}  // namespace

Verdict barbed_bisimilar(Workspace& ws, const ProcessPtr& p, const ProcessPtr& q,
                         std::size_t bound, const CheckOptions& opts) {
  ProcessPtr lp = located(p);
  ProcessPtr lq = located(q);
  BarbedSide a, b;
  try {
    a = barbed_side(ws, lp, bound, opts.state_cap);
    b = barbed_side(ws, lq, bound, opts.state_cap);
  } catch (const StateSpaceExceeded& e) {
    return {VerdictResult::Unknown,
            Witness{"barb", std::string("search aborted: ") + e.what(), {}}};
  }
  if (!a.graph.complete || !b.graph.complete)
    return {VerdictResult::Unknown,
            Witness{"barb", "reduction graph truncated before a verdict", {}}};

  std::size_t na = a.graph.states.size(), nb = b.graph.states.size();
  std::vector<std::vector<bool>> rel(na, std::vector<bool>(nb, false));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) rel[i][j] = a.weak_barbs[i] == b.weak_barbs[j];

  std::vector<std::vector<std::size_t>> succ_a(na), succ_b(nb);
  for (const auto& e : a.graph.edges) succ_a[e.from].push_back(e.to);
  for (const auto& e : b.graph.edges) succ_b[e.from].push_back(e.to);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        if (!rel[i][j]) continue;
        bool ok = true;
        for (std::size_t i2 : succ_a[i]) {
          bool found = false;
          for (std::size_t j2 : b.reach[j])
            if (rel[i2][j2]) {
              found = true;
              break;
            }
          if (!found) {
            ok = false;
            break;
          }
        }
        if (ok)
          for (std::size_t j2 : succ_b[j]) {
            bool found = false;
            for (std::size_t i2 : a.reach[i])
              if (rel[i2][j2]) {
                found = true;
                break;
              }
            if (!found) {
              ok = false;
              break;
            }
          }
        if (!ok) {
          rel[i][j] = false;
          changed = true;
        }
      }
    }
  }

  if (rel[0][0]) return {VerdictResult::Yes, std::nullopt};

  // Build a witness: a weak barb separating the roots if there is one,
  // otherwise the refined game failure.
  Witness w;
  if (a.weak_barbs[0] != b.weak_barbs[0]) {
    w.kind = "barb";
    for (const auto& s : a.weak_barbs[0])
      if (!b.weak_barbs[0].count(s)) {
        w.detail = "barb " + s.display() + " reachable from the left process only";
        w.fields = {{"symbol", s.display()}, {"side", "left"}};
        break;
      }
    if (w.detail.empty())
      for (const auto& s : b.weak_barbs[0])
        if (!a.weak_barbs[0].count(s)) {
          w.detail = "barb " + s.display() + " reachable from the right process only";
          w.fields = {{"symbol", s.display()}, {"side", "right"}};
          break;
        }
  } else {
    w.kind = "transition";
    w.detail = "no symmetric weak reduction bisimulation relates the roots";
  }
  return {VerdictResult::No, w};
}

// ---------------------------------------------------------------------------
// Congruence refutation by Y-context search
// ---------------------------------------------------------------------------

namespace {

// Closed prefix trees over the signature (both polarities), with exactly
// `size` prefix nodes; children are smaller trees or the empty process.
void probes_of_size(const Signature& sig, std::size_t size,
                    std::map<std::size_t, std::vector<ProcessPtr>>& memo) {
  if (memo.count(size)) return;
  std::vector<ProcessPtr> out;
  if (size == 0) {
    memo[0] = {};
    return;
  }
  for (const auto& [name, arity] : sig.arities()) {
    for (Polarity pol : {Polarity::Plain, Polarity::Co}) {
      PrefixSymbol sym{name, pol};
      // Distribute size-1 prefix nodes among `arity` children.
      std::vector<std::vector<std::size_t>> splits;
      std::vector<std::size_t> cur(arity, 0);
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx,
                                                              std::size_t left) {
        if (idx == arity) {
          if (left == 0) splits.push_back(cur);
          return;
        }
        for (std::size_t k = 0; k <= left; ++k) {
          cur[idx] = k;
          rec(idx + 1, left - k);
        }
      };
      rec(0, size - 1);
      for (const auto& split : splits) {
        // Build all combinations of child probes.
        std::vector<std::vector<ProcessPtr>> choices(arity);
        bool possible = true;
        for (std::size_t i = 0; i < arity; ++i) {
          if (split[i] == 0) {
            choices[i] = {Process::empty()};
          } else {
            probes_of_size(sig, split[i], memo);
            choices[i] = memo[split[i]];
            if (choices[i].empty()) possible = false;
          }
        }
        if (!possible) continue;
        std::vector<std::size_t> pick(arity, 0);
        while (true) {
          std::vector<ProcessPtr> args;
          for (std::size_t i = 0; i < arity; ++i) args.push_back(fresh_copy(choices[i][pick[i]]));
          out.push_back(Process::prefix(sym, std::move(args)));
          std::size_t i = 0;
          for (; i < arity; ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
          }
          if (i == arity) break;
        }
      }
    }
  }
  memo[size] = std::move(out);
}

}  // namespace

std::vector<ProcessPtr> enumerate_contexts(const Signature& sig, std::size_t max_size,
                                           const std::string& hole) {
  std::vector<ProcessPtr> out;
  std::map<std::size_t, std::vector<ProcessPtr>> probes;
  for (std::size_t k = 0; k <= max_size; ++k) probes_of_size(sig, k, probes);

  // Deduplicate probes up to alpha-equivalence.
  auto dedup = [](std::vector<ProcessPtr>& v) {
    std::set<std::string> seen;
    std::vector<ProcessPtr> kept;
    for (const auto& p : v) {
      std::string key = canonical_form(p, 64).key;
      if (seen.insert(key).second) kept.push_back(p);
    }
    v = std::move(kept);
  };
  for (auto& [_, v] : probes) dedup(v);

  // Contexts of size k, by increasing k. The hole contributes no size; a
  // parallel bar and each prefix contribute one.
  //
  // A bare hole becomes a single-vertex component so that substitution can
  // splice the plugged process into the composition.
  auto locate_ctx = [](const ProcessPtr& c) -> ProcessPtr {
    if (!c->as_var()) return c;
    Location l = fresh_location();
    return Process::par(LocGraph::single(l), {{l, c}});
  };
  std::map<std::size_t, std::vector<ProcessPtr>> ctxs;
  ctxs[0] = {Process::var(hole)};
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::vector<ProcessPtr> level;
    // hole context | probe
    for (std::size_t kc = 0; kc + 1 <= k; ++kc) {
      std::size_t kp = k - 1 - kc;
      if (kp == 0) continue;
      for (const auto& c : ctxs[kc])
        for (const auto& pb : probes[kp])
          level.push_back(full_par(locate_ctx(fresh_copy(c)), fresh_copy(pb)));
    }
    // prefix above the hole: sym.(ctx, eps...), hole context in one slot
    for (const auto& [name, arity] : sig.arities()) {
      if (arity == 0) continue;
      for (Polarity pol : {Polarity::Plain, Polarity::Co}) {
        for (const auto& c : ctxs[k - 1]) {
          for (std::size_t slot = 0; slot < arity; ++slot) {
            std::vector<ProcessPtr> args;
            for (std::size_t i = 0; i < arity; ++i)
              args.push_back(i == slot ? fresh_copy(c) : Process::empty());
            level.push_back(Process::prefix({name, pol}, std::move(args)));
            if (arity > 1) break;  // symmetric slots: one is enough with eps elsewhere
          }
        }
      }
    }
    // guarded-sum context + probe summand (only for prefix-shaped contexts)
    for (std::size_t kc = 1; kc + 1 <= k; ++kc) {
      std::size_t kp = k - kc;
      for (const auto& c : ctxs[kc]) {
        if (!c->as_prefix()) continue;
        for (const auto& pb : probes[kp])
          level.push_back(Process::sum(fresh_copy(c), fresh_copy(pb)));
      }
    }
    ctxs[k] = std::move(level);
  }

  for (std::size_t k = 0; k <= max_size; ++k)
    out.insert(out.end(), ctxs[k].begin(), ctxs[k].end());
  return out;
}

Verdict refute_congruence(Workspace& ws, const Signature& sig, const ProcessPtr& p,
                          const ProcessPtr& q, std::size_t max_context_size, std::size_t bound,
                          const CheckOptions& opts) {
  bool any_unknown = false;
  for (const ProcessPtr& ctx : enumerate_contexts(sig, max_context_size, kHoleVar)) {
    ProcessPtr rp = substitute_var(ctx, p, kHoleVar);
    ProcessPtr rq = substitute_var(ctx, q, kHoleVar);
    Verdict v = barbed_bisimilar(ws, located(rp), located(rq), bound, opts);
    if (v.no()) {
      Witness w;
      w.kind = "context";
      w.detail = "distinguishing context: " + pretty(ctx);
      w.fields = {{"context", pretty(ctx)}};
      if (v.witness) w.fields.emplace_back("cause", v.witness->detail);
      return {VerdictResult::No, w};
    }
    if (v.unknown()) any_unknown = true;
  }
  Witness w;
  w.kind = "context";
  w.detail = any_unknown ? "no refutation found; some contexts exhausted their bounds"
                         : "no refutation found within the context budget";
  return {VerdictResult::Unknown, w};
}

}  // namespace tccs
