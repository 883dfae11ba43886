#ifndef TCCS_REDUCTION_HPP
#define TCCS_REDUCTION_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tccs/canonical.hpp"
#include "tccs/process.hpp"
#include "tccs/syntax_ops.hpp"

namespace tccs {

// Total map from the web of a reduct back to the web of its source,
// recording where each location came from. Composes along multi-step
// reductions by function composition.
class ResidualFn {
 public:
  ResidualFn() = default;
  explicit ResidualFn(LocationMap mapping);

  static ResidualFn identity(std::span<const Location> web);

  Location operator()(Location p) const;
  const LocationMap& pairs() const { return map_; }
  std::vector<Location> domain() const;

  // outer . inner : applies inner first. Domain = domain(inner).
  static ResidualFn compose(const ResidualFn& outer, const ResidualFn& inner);

  // Re-expresses the residual on an alpha-renamed domain: given iso
  // new_web -> old_web, yields the map x |-> this(iso(x)).
  ResidualFn precompose_iso(const LocationMap& new_to_old) const;

  bool operator==(const ResidualFn&) const = default;
  bool operator<(const ResidualFn& o) const { return map_ < o.map_; }

 private:
  LocationMap map_;  // sorted by source (domain) location
};

// A coherent pair of components exposing dual prefixes. The plain symbol
// always sits at plain_at.
struct Redex {
  Location plain_at;
  Location co_at;
  PrefixSymbol symbol;  // the plain side's symbol
  std::size_t plain_summand = 0;
  std::size_t co_summand = 0;

  auto operator<=>(const Redex&) const = default;
};

struct Step {
  Redex redex;
  ProcessPtr reduct;
  ResidualFn residual;  // web(reduct) -> web(source)
  // Webs released by the fired prefixes, by argument index.
  std::vector<std::vector<Location>> spawned_plain;
  std::vector<std::vector<Location>> spawned_co;
};

// A reduction edge between interned representatives.
struct TauSucc {
  ProcessPtr target;     // representative
  ResidualFn residual;   // web(target) -> web(source rep)
  PrefixSymbol symbol;   // the interaction's plain symbol
};

// Memoizes per-term work that state-space exploration revisits heavily.
// Single-owner, not thread-safe; make one per top-level operation.
class Workspace {
 public:
  explicit Workspace(std::size_t iso_bound = kDefaultIsoBound)
      : iso_bound_(iso_bound), states_(iso_bound) {}

  // Cansum of a component, computed once per term instance so that the
  // locations of an unfolding are stable across calls.
  const ProcessPtr& cansum_of(const ProcessPtr& p);

  StateIndex& states() { return states_; }
  std::size_t iso_bound() const { return iso_bound_; }

  // Interns and returns the representative plus iso onto it.
  StateIndex::Entry intern(const ProcessPtr& p);

  // Reduction successors of an interned representative, computed once.
  const std::vector<TauSucc>& tau_successors(const ProcessPtr& rep);

 private:
  std::size_t iso_bound_;
  StateIndex states_;
  // Keyed by term instance; the key is pinned alongside the value so that a
  // recycled allocation can never alias a stale entry.
  std::map<const Process*, std::pair<ProcessPtr, ProcessPtr>> cansum_memo_;
  std::map<const Process*, std::pair<ProcessPtr, std::vector<TauSucc>>> tau_succ_memo_;
};

// All redexes of a closed located canonical process, plain side first.
std::vector<Redex> enumerate_redexes(Workspace& ws, const ProcessPtr& p);

// One internal reduction step at the given redex.
Step step(Workspace& ws, const ProcessPtr& p, const Redex& r);

inline constexpr std::size_t kDefaultStateCap = 50'000;

struct TauClosureEntry {
  ProcessPtr state;      // representative (interned)
  ResidualFn residual;   // web(state) -> web(root)
  std::size_t depth = 0;
};

struct TauClosure {
  std::vector<TauClosureEntry> entries;  // includes (root, identity)
  bool complete = true;                  // false when bound or cap was hit
};

// All alpha-distinct reducts reachable in at most `bound` tau-steps, paired
// with every distinct composed residual function. Truncation (step bound or
// state cap) is reported through `complete`; verdicts built on truncated
// closures must degrade to Unknown, never to No.
TauClosure tau_closure(Workspace& ws, const ProcessPtr& p, std::size_t bound,
                       std::size_t state_cap = kDefaultStateCap);

// The reduction graph over interned states (residuals dropped).
struct ReductionGraph {
  std::vector<ProcessPtr> states;  // index 0 is the root representative
  struct Edge {
    std::size_t from;
    std::size_t to;
    PrefixSymbol symbol;
  };
  std::vector<Edge> edges;
  bool complete = true;
};

ReductionGraph reduction_graph(Workspace& ws, const ProcessPtr& p, std::size_t bound,
                               std::size_t state_cap = kDefaultStateCap);

}  // namespace tccs

#endif
