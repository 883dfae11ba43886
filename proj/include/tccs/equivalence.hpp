#ifndef TCCS_EQUIVALENCE_HPP
#define TCCS_EQUIVALENCE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tccs/lts.hpp"
#include "tccs/reduction.hpp"

namespace tccs {

// A binary relation on locations (sorted set of pairs; not necessarily a
// bijection).
using LocRel = std::vector<std::pair<Location, Location>>;

LocRel rel_normalize(LocRel r);
LocRel rel_transpose(const LocRel& r);
LocRel rel_compose(const LocRel& first, const LocRel& then);  // {(a,c) | aRb, bSc}
bool rel_contains(const LocRel& r, Location a, Location b);
LocRel rel_identity(std::span<const Location> web);
LocRel rel_full(std::span<const Location> a, std::span<const Location> b);

struct LocalizedTriple {
  ProcessPtr left;
  LocRel rel;  // subset of web(left) x web(right)
  ProcessPtr right;
};

struct LocalizedRelation {
  std::vector<LocalizedTriple> triples;
};

LocalizedRelation symmetrize(const LocalizedRelation& r);
LocalizedRelation identity_relation(std::span<const ProcessPtr> corpus);

struct Witness {
  std::string kind;  // "transition", "barb", "context", "triple"
  std::string detail;
  std::vector<std::pair<std::string, std::string>> fields;
};

enum class VerdictResult { Yes, No, Unknown };

struct Verdict {
  VerdictResult result = VerdictResult::Unknown;
  std::optional<Witness> witness;

  bool yes() const { return result == VerdictResult::Yes; }
  bool no() const { return result == VerdictResult::No; }
  bool unknown() const { return result == VerdictResult::Unknown; }
};

std::string to_string(VerdictResult r);

struct CheckOptions {
  std::size_t state_cap = kDefaultStateCap;
  std::size_t triple_cap = 50'000;
  std::size_t iso_limit = 256;  // max isomorphisms enumerated per matching
};

// Checks that a given localized relation (symmetrized internally) is a weak
// bisimulation: every tau-challenge and labeled challenge of every triple is
// answered inside the relation, under the conditions on residuals and the
// arity>=2 spawned-set dichotomy. `bound` caps each tau-segment of the
// answering weak transitions.
Verdict check_localized_bisimulation(Workspace& ws, const LocalizedRelation& r,
                                     std::size_t bound, const CheckOptions& opts = {});

struct BisimResult {
  Verdict verdict;
  // For Yes: a self-supporting set of triples containing the root, i.e. a
  // weak bisimulation witnessing the verdict.
  LocalizedRelation relation;
};

// On-the-fly greatest fixpoint for weak bisimilarity of p and q under the
// starting location relation e.
BisimResult bisimilar(Workspace& ws, const ProcessPtr& p, const ProcessPtr& q, const LocRel& e,
                      std::size_t bound, const CheckOptions& opts = {});

// (d, d2, e) adapted: for all (a,b,b') with (b,b') in e, (a,b) in d iff
// (a,b') in d2.
bool is_adapted(const LocRel& d, const LocRel& d2, const LocRel& e);

// Relational composition of localized relations: (P,H,R) for (P,E,Q) in r,
// (Q',F,R) in s with Q alpha-equivalent to Q', H the composite of E and F
// through each middle isomorphism.
LocalizedRelation compose_localized(const LocalizedRelation& s, const LocalizedRelation& r,
                                    std::size_t iso_limit = 256);

// Triples (S +C P, Id_|S| u E, S +D Q) for every (P,E,Q) in r, with c and d
// restricted to each triple's webs. Throws NotAdapted if (c,d,E) fails for
// some triple.
LocalizedRelation parallel_extension(const LocalizedRelation& r, const ProcessPtr& s,
                                     const LocRel& c, const LocRel& d);

// Weak barbed bisimilarity on the finite reduction graphs of p and q.
Verdict barbed_bisimilar(Workspace& ws, const ProcessPtr& p, const ProcessPtr& q,
                         std::size_t bound, const CheckOptions& opts = {});

// Searches Y-contexts up to the given size for one under which p and q are
// not weakly barbed bisimilar. Never affirms congruence: Yes is not a
// possible result.
Verdict refute_congruence(Workspace& ws, const Signature& sig, const ProcessPtr& p,
                          const ProcessPtr& q, std::size_t max_context_size, std::size_t bound,
                          const CheckOptions& opts = {});

// Y-context enumeration used by refute_congruence: processes with exactly
// one free occurrence of the hole variable, never under a mu binder,
// ordered by size.
std::vector<ProcessPtr> enumerate_contexts(const Signature& sig, std::size_t max_size,
                                           const std::string& hole = "Y");

inline constexpr const char* kHoleVar = "Y";

}  // namespace tccs

#endif
