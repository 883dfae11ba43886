// Acceptance suite: one criterion per section, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "gen.hpp"
#include "tccs/automata.hpp"
#include "tccs/canonical.hpp"
#include "tccs/ccs.hpp"
#include "tccs/equivalence.hpp"
#include "tccs/lts.hpp"
#include "tccs/pretty.hpp"
#include "tccs/reduction.hpp"
#include "tccs/syntax_ops.hpp"

using namespace tccs;
using namespace tccs::testgen;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  double limit_seconds;

  template <typename F>
  void run(F&& body) {
    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    std::string error;
    try {
      body(error);
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(clock::now() - start).count();
    if (error.empty() && limit_seconds > 0 && secs > limit_seconds) {
      std::ostringstream os;
      os << "exceeded time limit (" << secs << "s > " << limit_seconds << "s)";
      error = os.str();
    }
    if (error.empty()) {
      std::printf("[PASS] %s (%.2fs)\n", name.c_str(), secs);
    } else {
      std::printf("[FAIL] %s (%.2fs): %s\n", name.c_str(), secs, error.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
};

#define REQUIRE_OR(cond, msg) \
  do {                        \
    if (!(cond)) {            \
      error = (msg);          \
      return;                 \
    }                         \
  } while (0)

// --- shared example material ----------------------------------------------

struct Demo {
  ProcessPtr p;
  Location la, lca, lf, lcf;
};

Demo demo4() {
  Demo w;
  w.la = fresh_location();
  w.lca = fresh_location();
  w.lf = fresh_location();
  w.lcf = fresh_location();
  std::vector<Location> web{w.la, w.lca, w.lf, w.lcf};
  w.p = Process::par(LocGraph::complete(web),
                     {{w.la, pre("a")},
                      {w.lca, copre("a")},
                      {w.lf, pre("f", {pre("a"), copre("a")})},
                      {w.lcf, copre("f", {pre("a"), copre("a")})}});
  return w;
}

ProcessPtr demo_after_f() {
  Location l1 = fresh_location(), l2 = fresh_location();
  Location l5 = fresh_location(), l6 = fresh_location();
  Location l7 = fresh_location(), l8 = fresh_location();
  std::vector<Location> web{l1, l2, l5, l6, l7, l8};
  std::vector<LocGraph::Edge> edges{{l1, l2}, {l5, l7}, {l6, l8}};
  for (Location x : {l5, l6, l7, l8}) {
    edges.push_back({l1, x});
    edges.push_back({l2, x});
  }
  return Process::par(LocGraph(web, edges), {{l1, pre("a")},
                                             {l2, copre("a")},
                                             {l5, pre("a")},
                                             {l6, copre("a")},
                                             {l7, pre("a")},
                                             {l8, copre("a")}});
}

ProcessPtr demo_after_f_a() {
  Location l1 = fresh_location(), l6 = fresh_location();
  Location l7 = fresh_location(), l8 = fresh_location();
  std::vector<Location> web{l1, l6, l7, l8};
  std::vector<LocGraph::Edge> edges{{l1, l6}, {l1, l7}, {l1, l8}, {l6, l8}};
  return Process::par(LocGraph(web, edges),
                      {{l1, pre("a")}, {l6, copre("a")}, {l7, pre("a")}, {l8, copre("a")}});
}

ProcessPtr demo_stuck() { return compose({pre("a"), copre("a")}, false); }

ProcessPtr interleaving_sum() {
  return compose({sums({pre("a", {pre("b", {eps()})}), pre("b", {pre("a", {eps()})})})});
}
ProcessPtr ab_parallel() { return compose({pre("a", {eps()}), pre("b", {eps()})}, true); }

// --- criteria ---------------------------------------------------------------

void criterion1(std::string& error) {
  Workspace ws;
  Demo w = demo4();

  auto redexes = enumerate_redexes(ws, w.p);
  REQUIRE_OR(redexes.size() == 2, "expected exactly 2 redexes in the start process");

  auto fr = std::find_if(redexes.begin(), redexes.end(),
                         [](const Redex& r) { return r.symbol.name == "f"; });
  REQUIRE_OR(fr != redexes.end(), "no f redex found");

  Step s1 = step(ws, w.p, *fr);
  REQUIRE_OR(web_of(s1.reduct).size() == 6, "first reduct web size");
  REQUIRE_OR(alpha_equal(s1.reduct, demo_after_f()),
             "first reduct edge set differs from the expected one");

  auto redexes1 = enumerate_redexes(ws, s1.reduct);
  auto ar = std::find_if(redexes1.begin(), redexes1.end(), [&](const Redex& r) {
    return r.symbol.name == "a" && s1.residual(r.plain_at) == w.lf && r.co_at == w.lca;
  });
  REQUIRE_OR(ar != redexes1.end(), "no spawned-a against original co-a redex");
  Step s2 = step(ws, s1.reduct, *ar);
  REQUIRE_OR(alpha_equal(s2.reduct, demo_after_f_a()),
             "second reduct edge set differs from the expected one");

  auto redexes2 = enumerate_redexes(ws, s2.reduct);
  REQUIRE_OR(redexes2.size() == 2, "expected exactly 2 terminal interactions");
  std::string stuck_key = canonical_form(demo_stuck()).key;
  for (const Redex& r : redexes2) {
    Step s3 = step(ws, s2.reduct, r);
    REQUIRE_OR(canonical_form(s3.reduct).key == stuck_key,
               "terminal interaction does not reach the stuck two-component state");
    REQUIRE_OR(enumerate_redexes(ws, s3.reduct).empty(), "final state is not stuck");
  }
}

void criterion2(std::string& error) {
  TreeAutomaton a;
  a.states = {"X"};
  a.transitions = {{"X", "f", {"X", "X"}}, {"X", "a", {}}};

  Rng rng(20240);
  Workspace ws;
  int unknowns = 0, disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    Tree t = random_tree(rng, 4);
    Verdict v = recognize_by_interaction(ws, a, "X", t);
    if (v.unknown()) ++unknowns;
    else if (v.yes() != recognizes_oracle(a, "X", t)) ++disagreements;
  }
  for (int i = 0; i < 50; ++i) {
    Tree t = random_tree_enlarged(rng, 4);
    Verdict v = recognize_by_interaction(ws, a, "X", t);
    if (v.unknown()) ++unknowns;
    else if (v.yes() != recognizes_oracle(a, "X", t)) ++disagreements;
  }
  REQUIRE_OR(unknowns == 0, "recognition produced Unknown verdicts");
  REQUIRE_OR(disagreements == 0, "recognition disagreed with the oracle");
}

void criterion3(std::string& error) {
  Workspace ws;
  ProcessPtr PR = full_par(fg_P(), fg_R());
  ProcessPtr QR = full_par(fg_Q(), fg_R());

  Verdict v = barbed_bisimilar(ws, PR, QR, 64);
  REQUIRE_OR(v.no(), "expected No on P|R vs Q|R");
  REQUIRE_OR(v.witness.has_value(), "missing witness");
  bool a_witness = false;
  for (const auto& [k, val] : v.witness->fields)
    if (k == "symbol" && val == "a") a_witness = true;
  REQUIRE_OR(a_witness, "witness does not exhibit the barb a");

  ReductionGraph g = reduction_graph(ws, PR, 256);
  REQUIRE_OR(g.complete, "P|R reduction graph truncated");
  REQUIRE_OR(g.states.size() < 100, "P|R reduction graph unexpectedly large");
  for (const ProcessPtr& s : g.states)
    REQUIRE_OR(!barbs(ws, s).count(plain("a")), "a state reachable from P|R has barb a");
}

void criterion4(std::string& error) {
  Workspace ws;
  ProcessPtr p = ab_parallel();
  ProcessPtr q = interleaving_sum();
  BisimResult r = bisimilar(ws, p, q, rel_full(web_of(p), web_of(q)), 16);
  REQUIRE_OR(r.verdict.yes(), "check-bisim expected Yes within bound 16");
  Verdict b = barbed_bisimilar(ws, p, q, 32);
  REQUIRE_OR(b.yes(), "check-barbed expected Yes");
}

void criterion5(std::string& error) {
  Rng rng(555);

  // (i) identity localized relations are accepted. Corpora must be closed
  // under the game moves, so truncated closures are regenerated.
  {
    int done = 0, attempts = 0;
    while (done < 100 && attempts < 500) {
      ++attempts;
      Workspace ws;
      ProcessPtr root = (attempts % 2 == 0)
                            ? random_ccs_process(rng, sig_words(), 2)
                            : random_located(rng, sig_mixed(), 3, 2);
      bool closed = true;
      std::vector<ProcessPtr> corpus = transition_closure(ws, root, 120, 16, &closed);
      if (!closed) continue;
      LocalizedRelation id = identity_relation(corpus);
      Verdict v = check_localized_bisimulation(ws, id, 20);
      REQUIRE_OR(v.yes(), "identity relation rejected (instance " + std::to_string(done) + ")");
      ++done;
    }
    REQUIRE_OR(done == 100, "identity-relation instances incomplete");
  }

  // (ii) composition of accepted relations is accepted.
  {
    for (int i = 0; i < 100; ++i) {
      Workspace ws;
      ProcessPtr a, b, c;
      if (i % 2 == 0) {
        a = random_ccs_process(rng, sig_words(), 2);
        b = fresh_copy(a);
        c = fresh_copy(a);
      } else {
        a = ab_parallel();
        b = interleaving_sum();
        c = fresh_copy(a);
      }
      BisimResult r1 = bisimilar(ws, a, b, rel_full(web_of(a), web_of(b)), 32);
      BisimResult r2 = bisimilar(ws, b, c, rel_full(web_of(b), web_of(c)), 32);
      REQUIRE_OR(r1.verdict.yes() && r2.verdict.yes(),
                 "composition instance setup failed (instance " + std::to_string(i) + ")");
      LocalizedRelation comp = compose_localized(r2.relation, r1.relation);
      REQUIRE_OR(!comp.triples.empty(), "empty composite relation");
      Verdict v = check_localized_bisimulation(ws, comp, 32);
      REQUIRE_OR(v.yes(), "composite relation rejected (instance " + std::to_string(i) + ")");
    }
  }

  // (iii) parallel extension with adapted (C, D, E): every produced triple is
  // weakly bisimilar under its relation (the full extension quantifies over
  // all observers, so the materialized set is validated on the fly).
  {
    for (int i = 0; i < 100; ++i) {
      Workspace ws;
      LocalizedRelation base;
      ProcessPtr s = compose({random_ccs_sum(rng, sig_words(), 1, false)});
      LocRel c, d;
      if (i % 2 == 0) {
        ProcessPtr u = located(random_ccs_process(rng, sig_words(), 1));
        base = identity_relation(std::vector<ProcessPtr>{u});
        for (Location x : web_of(s))
          for (Location y : web_of(u))
            if (coin(rng, 0.5)) c.emplace_back(x, y);
        c = rel_normalize(std::move(c));
        d = c;  // identity E: equal connection relations are always adapted
      } else {
        ProcessPtr p = ab_parallel();
        ProcessPtr q = interleaving_sum();
        base.triples.push_back({p, rel_full(web_of(p), web_of(q)), q});
        for (Location x : web_of(s)) {
          for (Location y : web_of(p)) c.emplace_back(x, y);
          for (Location y : web_of(q)) d.emplace_back(x, y);
        }
        c = rel_normalize(std::move(c));
        d = rel_normalize(std::move(d));
      }
      LocalizedRelation ext = parallel_extension(base, s, c, d);
      REQUIRE_OR(!ext.triples.empty(), "empty parallel extension");
      for (const auto& t : ext.triples) {
        BisimResult br = bisimilar(ws, t.left, t.right, t.rel, 32);
        REQUIRE_OR(br.verdict.yes(),
                   "extension triple not bisimilar (instance " + std::to_string(i) + ")");
      }
    }
  }

  // (iv) adaptedness transposition.
  {
    for (int i = 0; i < 150; ++i) {
      std::vector<Location> A, B, B2;
      for (int k = 0; k < 3; ++k) A.push_back(fresh_location());
      for (int k = 0; k < 3; ++k) B.push_back(fresh_location());
      for (int k = 0; k < 3; ++k) B2.push_back(fresh_location());
      auto rand_rel = [&](const std::vector<Location>& x, const std::vector<Location>& y) {
        LocRel r;
        for (Location u : x)
          for (Location v : y)
            if (coin(rng, 0.4)) r.emplace_back(u, v);
        return rel_normalize(std::move(r));
      };
      LocRel cc = rand_rel(A, B), dd = rand_rel(A, B2), ee = rand_rel(B, B2);
      REQUIRE_OR(is_adapted(cc, dd, ee) == is_adapted(dd, cc, rel_transpose(ee)),
                 "adaptedness transposition failed");
    }
  }

  // (v) substitution preserves all three canonical classes.
  {
    int done = 0;
    for (int i = 0; i < 150; ++i) {
      ProcessPtr p = coin(rng) ? ProcessPtr(compose({random_ccs_sum(rng, sig_words(), 2)}))
                               : random_ccs_sum(rng, sig_words(), 2);
      ProcessPtr r;
      switch (pick(rng, 3)) {
        case 0:
          r = sums({pre("a", {Process::var("HOLE")}), random_ccs_sum(rng, sig_words(), 1, false)});
          break;
        case 1:
          r = Process::fix("Z", sums({pre("b", {Process::var("HOLE")}),
                                      pre("a", {Process::var("Z")})}));
          break;
        default:
          r = compose({sums({pre("c", {Process::var("HOLE")})}),
                       random_ccs_sum(rng, sig_words(), 1)});
          break;
      }
      CanonicalClass before = classify(r);
      REQUIRE_OR(before != CanonicalClass::NotCanonical, "generator produced non-canonical r");
      REQUIRE_OR(classify(substitute_var(r, p, "HOLE")) == before,
                 "class not preserved by substitution");
      ++done;
    }
    REQUIRE_OR(done == 150, "substitution instances incomplete");
  }

  // (vi) clause-2 separation on generated steps.
  {
    Workspace ws;
    int steps_checked = 0;
    for (int i = 0; i < 2000 && steps_checked < 120; ++i) {
      ProcessPtr p = random_located(rng, sig_mixed(), 4, 2);
      auto redexes = enumerate_redexes(ws, p);
      if (redexes.empty()) continue;
      Step s = step(ws, p, redexes[pick(rng, redexes.size())]);
      const ParNode& par = located_par(s.reduct);
      std::size_t n = s.spawned_plain.size();
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (x == y) continue;
          for (Location u : s.spawned_plain[x])
            for (Location v : s.spawned_co[y])
              REQUIRE_OR(!par.graph.adjacent(u, v), "cross-index coherence edge after a step");
        }
      ++steps_checked;
    }
    REQUIRE_OR(steps_checked >= 100, "not enough generated steps");
  }
}

void criterion6(std::string& error) {
  Workspace ws;
  Signature sig = sig_mixed();
  ProcessPtr P = compose({fg_P()});
  ProcessPtr Q = fg_Q();

  // size(Y | co f.(eps, co g.(a.(eps), eps))) = 1 bar + 3 prefixes = 4.
  Verdict v = refute_congruence(ws, sig, P, Q, 4, 32);
  REQUIRE_OR(v.no(), "expected a refutation for the f/g pair");
  REQUIRE_OR(v.witness.has_value() && v.witness->kind == "context", "missing context witness");

  Verdict same = refute_congruence(ws, sig, P, fresh_copy(P), 4, 32);
  REQUIRE_OR(same.unknown(), "expected Unknown on identical processes");
}

void criterion7(std::string& error) {
  Rng rng(777);
  Signature sig({{"a", 1}, {"b", 1}});
  int done = 0, attempts = 0;
  while (done < 50 && attempts < 400) {
    ++attempts;
    ProcessPtr p = random_ccs_process(rng, sig, 2);
    ProcessPtr q = coin(rng, 0.3) ? fresh_copy(p) : random_ccs_process(rng, sig, 2);

    Verdict classical = ccs_weak_bisimilar(p, q, 200);
    if (classical.unknown()) continue;  // over the 200-state budget: regenerate

    Workspace ws;
    ProcessPtr lp = located(fresh_copy(p));
    ProcessPtr lq = located(fresh_copy(q));
    BisimResult localized = bisimilar(ws, lp, lq, rel_full(web_of(lp), web_of(lq)), 128);
    REQUIRE_OR(!localized.verdict.unknown(),
               "localized checker returned Unknown on the word fragment");
    REQUIRE_OR(localized.verdict.result == classical.result,
               "verdict disagreement on pair " + std::to_string(done) + ": classical " +
                   to_string(classical.result) + " vs localized " +
                   to_string(localized.verdict.result) + "\n  left:  " + pretty(p) +
                   "\n  right: " + pretty(q));
    ++done;
  }
  REQUIRE_OR(done == 50, "could not assemble 50 in-budget pairs");
}

}  // namespace

int main() {
  Criterion{"criterion 1: worked reduction replay (2 redexes, exact edge sets, stuck tail)", 1.0}
      .run(criterion1);
  Criterion{"criterion 2: recognition agrees with the oracle on 250 trees, no Unknown", 10.0}
      .run(criterion2);
  Criterion{"criterion 3: P|R vs Q|R refuted with the barb-a witness; P|R never shows a", 5.0}
      .run(criterion3);
  Criterion{"criterion 4: parallel/interleaving pair is weakly and barbed bisimilar", 0.0}
      .run(criterion4);
  Criterion{"criterion 5: property suite (identity, composition, extension, adaptedness, "
            "substitution, separation)",
            0.0}
      .run(criterion5);
  Criterion{"criterion 6: congruence refuted for f/g within context size 4; Unknown on equals",
            60.0}
      .run(criterion6);
  Criterion{"criterion 7: classical and localized verdicts coincide on 50 word-fragment pairs",
            0.0}
      .run(criterion7);
  return failures == 0 ? 0 : 1;
}
