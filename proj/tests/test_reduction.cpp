#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "tccs/canonical.hpp"
#include "tccs/errors.hpp"
#include "tccs/pretty.hpp"
#include "tccs/reduction.hpp"

using namespace tccs;
using namespace tccs::testgen;

namespace {

// The worked 4-component example: a | co a | f.(a, co a) | co f.(a, co a)
// over a complete graph, with a nullary and f binary.
struct WorkedExample {
  ProcessPtr p;
  Location la, lca, lf, lcf;
};

WorkedExample worked_example() {
  WorkedExample w;
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

// Builds the expected reduct after the f interaction: vertices 1,2 keep
// all their edges, the spawned pairs are linked same-index only.
ProcessPtr expected_after_f() {
  Location l1 = fresh_location(), l2 = fresh_location();
  Location l5 = fresh_location(), l6 = fresh_location();
  Location l7 = fresh_location(), l8 = fresh_location();
  std::vector<Location> web{l1, l2, l5, l6, l7, l8};
  std::vector<LocGraph::Edge> edges;
  for (Location x : {l5, l6, l7, l8}) {
    edges.push_back({l1, x});
    edges.push_back({l2, x});
  }
  edges.push_back({l1, l2});
  edges.push_back({l5, l7});
  edges.push_back({l6, l8});
  return Process::par(LocGraph(web, edges), {{l1, pre("a")},
                                             {l2, copre("a")},
                                             {l5, pre("a")},
                                             {l6, copre("a")},
                                             {l7, pre("a")},
                                             {l8, copre("a")}});
}

ProcessPtr expected_after_f_and_a() {
  Location l1 = fresh_location(), l6 = fresh_location();
  Location l7 = fresh_location(), l8 = fresh_location();
  std::vector<Location> web{l1, l6, l7, l8};
  std::vector<LocGraph::Edge> edges{{l1, l6}, {l1, l7}, {l1, l8}, {l6, l8}};
  return Process::par(LocGraph(web, edges),
                      {{l1, pre("a")}, {l6, copre("a")}, {l7, pre("a")}, {l8, copre("a")}});
}

ProcessPtr expected_stuck() {
  return compose({pre("a"), copre("a")}, false);  // a (+) co a, no edge
}

}  // namespace

TEST_CASE("the empty process has no redexes") {
  Workspace ws;
  CHECK(enumerate_redexes(ws, Process::empty()).empty());
}

TEST_CASE("coherence is required for a redex") {
  Workspace ws;
  ProcessPtr p = compose({pre("a", {}), copre("a", {})}, false);
  CHECK(enumerate_redexes(ws, p).empty());
  ProcessPtr q = compose({pre("a", {}), copre("a", {})}, true);
  CHECK(enumerate_redexes(ws, q).size() == 1);
}

TEST_CASE("open processes are rejected") {
  Workspace ws;
  Location l = fresh_location();
  ProcessPtr p = Process::par(LocGraph::single(l), {{l, Process::var("X")}});
  CHECK_THROWS_AS(enumerate_redexes(ws, p), OpenProcess);
}

TEST_CASE("worked example: redexes, first and second steps, stuck states") {
  Workspace ws;
  WorkedExample w = worked_example();

  auto redexes = enumerate_redexes(ws, w.p);
  REQUIRE(redexes.size() == 2);
  auto fr = std::find_if(redexes.begin(), redexes.end(),
                         [](const Redex& r) { return r.symbol.name == "f"; });
  REQUIRE(fr != redexes.end());
  CHECK(fr->plain_at == w.lf);
  CHECK(fr->co_at == w.lcf);

  // First step: the f interaction.
  Step s1 = step(ws, w.p, *fr);
  CHECK(web_of(s1.reduct).size() == 6);
  CHECK(alpha_equal(s1.reduct, expected_after_f()));

  // Residual totality and image.
  const auto& web1 = web_of(s1.reduct);
  CHECK(s1.residual.domain() == web1);
  for (Location l : web1) {
    Location src = s1.residual(l);
    CHECK(std::binary_search(web_of(w.p).begin(), web_of(w.p).end(), src));
  }

  // Second step: the spawned plain a (from the f side) against the original
  // co a.
  auto redexes1 = enumerate_redexes(ws, s1.reduct);
  auto ar = std::find_if(redexes1.begin(), redexes1.end(), [&](const Redex& r) {
    return r.symbol.name == "a" && s1.residual(r.plain_at) == w.lf && r.co_at == w.lca;
  });
  REQUIRE(ar != redexes1.end());
  Step s2 = step(ws, s1.reduct, *ar);
  CHECK(web_of(s2.reduct).size() == 4);
  CHECK(alpha_equal(s2.reduct, expected_after_f_and_a()));

  // From there exactly two interactions remain, both reaching the stuck
  // two-component state.
  auto redexes2 = enumerate_redexes(ws, s2.reduct);
  REQUIRE(redexes2.size() == 2);
  ProcessPtr stuck = expected_stuck();
  std::string stuck_key = canonical_form(stuck).key;
  for (const Redex& r : redexes2) {
    Step s3 = step(ws, s2.reduct, r);
    CHECK(canonical_form(s3.reduct).key == stuck_key);
    CHECK(enumerate_redexes(ws, s3.reduct).empty());
  }
}

TEST_CASE("a nullary interaction erases both components") {
  Workspace ws;
  ProcessPtr p = compose({pre("a"), copre("a")}, true);
  auto redexes = enumerate_redexes(ws, p);
  REQUIRE(redexes.size() == 1);
  Step s = step(ws, p, redexes[0]);
  CHECK(web_of(s.reduct).empty());
  CHECK(s.residual.pairs().empty());
}

TEST_CASE("step is deterministic up to alpha-equivalence") {
  Workspace ws;
  WorkedExample w = worked_example();
  auto redexes = enumerate_redexes(ws, w.p);
  REQUIRE(!redexes.empty());
  Step a = step(ws, w.p, redexes[0]);
  Step b = step(ws, w.p, redexes[0]);
  CHECK(alpha_equal(a.reduct, b.reduct));
}

TEST_CASE("invalid redexes are rejected") {
  Workspace ws;
  ProcessPtr p = compose({pre("a"), copre("a")}, true);
  Redex bad{web_of(p)[0], web_of(p)[1], plain("a"), 3, 0};
  CHECK_THROWS_AS(step(ws, p, bad), InvalidRedex);
  Redex wrong_sym{web_of(p)[0], web_of(p)[1], plain("f"), 0, 0};
  CHECK_THROWS_AS(step(ws, p, wrong_sym), InvalidRedex);
}

TEST_CASE("clause-2 separation holds on generated steps") {
  Rng rng(41);
  Workspace ws;
  int steps_checked = 0;
  for (int i = 0; i < 1000 && steps_checked < 120; ++i) {
    ProcessPtr p = random_located(rng, sig_mixed(), 4, 2);
    auto redexes = enumerate_redexes(ws, p);
    if (redexes.empty()) continue;
    const Redex& r = redexes[pick(rng, redexes.size())];
    Step s = step(ws, p, r);
    const ParNode& par = located_par(s.reduct);
    std::size_t n = s.spawned_plain.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        for (Location x : s.spawned_plain[a])
          for (Location y : s.spawned_co[b]) CHECK(!par.graph.adjacent(x, y));
        for (Location x : s.spawned_plain[a])
          for (Location y : s.spawned_plain[b]) CHECK(!par.graph.adjacent(x, y));
        for (Location x : s.spawned_co[a])
          for (Location y : s.spawned_co[b]) CHECK(!par.graph.adjacent(x, y));
      }
      // Same-index cross edges are all present.
      for (Location x : s.spawned_plain[a])
        for (Location y : s.spawned_co[a]) CHECK(par.graph.adjacent(x, y));
    }
    ++steps_checked;
  }
  CHECK(steps_checked >= 100);
}

TEST_CASE("tau closure of the empty process is trivial") {
  Workspace ws;
  TauClosure c = tau_closure(ws, Process::empty(), 8);
  REQUIRE(c.entries.size() == 1);
  CHECK(web_of(c.entries[0].state).empty());
  CHECK(c.entries[0].residual.pairs().empty());
  CHECK(c.complete);
}

TEST_CASE("tau closure of the worked example reaches the stuck state") {
  Workspace ws;
  WorkedExample w = worked_example();
  TauClosure c = tau_closure(ws, w.p, 4);
  CHECK(c.complete);
  std::string stuck_key = canonical_form(expected_stuck()).key;
  bool found = false;
  for (const auto& e : c.entries)
    if (canonical_form(e.state).key == stuck_key) found = true;
  CHECK(found);
}

TEST_CASE("tau closure is monotone in the bound and stabilizes") {
  Workspace ws;
  WorkedExample w = worked_example();
  std::size_t prev = 0;
  std::size_t stable = 0;
  for (std::size_t b = 0; b <= 6; ++b) {
    TauClosure c = tau_closure(ws, fresh_copy(w.p), b);
    CHECK(c.entries.size() >= prev);
    prev = c.entries.size();
    if (b >= 3) {
      if (stable == 0) stable = c.entries.size();
      CHECK(c.entries.size() == stable);
      CHECK(c.complete);
    }
  }
}

TEST_CASE("residual functions compose along multi-step reductions") {
  Workspace ws;
  WorkedExample w = worked_example();
  auto redexes = enumerate_redexes(ws, w.p);
  auto fr = std::find_if(redexes.begin(), redexes.end(),
                         [](const Redex& r) { return r.symbol.name == "f"; });
  REQUIRE(fr != redexes.end());
  Step s1 = step(ws, w.p, *fr);
  auto redexes1 = enumerate_redexes(ws, s1.reduct);
  REQUIRE(!redexes1.empty());
  Step s2 = step(ws, s1.reduct, redexes1[0]);
  ResidualFn composed = ResidualFn::compose(s1.residual, s2.residual);
  for (Location l : web_of(s2.reduct)) CHECK(composed(l) == s1.residual(s2.residual(l)));
  CHECK(composed.domain() == web_of(s2.reduct));
}

TEST_CASE("reduction graph of the worked example") {
  Workspace ws;
  WorkedExample w = worked_example();
  ReductionGraph g = reduction_graph(ws, w.p, 16);
  CHECK(g.complete);
  CHECK(g.states.size() >= 4);
  // Terminal states really are tau-stuck, and the two-component stuck state
  // is among them. (The path that fires a first ends in a four-component
  // stuck state instead: the spawned same-index pairs are coherent but not
  // dual.)
  std::string stuck_key = canonical_form(expected_stuck()).key;
  bool saw_stuck_pair = false;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    bool has_out = false;
    for (const auto& e : g.edges)
      if (e.from == i) has_out = true;
    if (!has_out) {
      CHECK(enumerate_redexes(ws, g.states[i]).empty());
      if (canonical_form(g.states[i]).key == stuck_key) saw_stuck_pair = true;
    }
  }
  CHECK(saw_stuck_pair);
}

TEST_CASE("the state cap marks the closure incomplete") {
  Workspace ws;
  WorkedExample w = worked_example();
  TauClosure c = tau_closure(ws, w.p, 16, 2);
  CHECK(!c.complete);
  CHECK(c.entries.size() <= 2);
}

TEST_CASE("restriction is transparent for internal reduction") {
  Workspace ws;
  ProcessPtr p = Process::restrict(compose({pre("a"), copre("a")}, true), {"a"});
  auto redexes = enumerate_redexes(ws, p);
  REQUIRE(redexes.size() == 1);
  Step s = step(ws, p, redexes[0]);
  CHECK(restriction_set(s.reduct) == std::vector<std::string>{"a"});
  CHECK(web_of(s.reduct).empty());
}
