#ifndef TCCS_CCS_HPP
#define TCCS_CCS_HPP

#include <utility>
#include <vector>

#include "tccs/equivalence.hpp"
#include "tccs/process.hpp"

namespace tccs {

// The word fragment: all prefix arities <= 1 and every parallel composition
// a complete graph.
bool in_ccs_fragment(const ProcessPtr& p);
void require_ccs_fragment(const ProcessPtr& p);  // throws NotCCSFragment

// Forgets location relations: pairs (P,Q) with (P,E,Q) in r for some E.
std::vector<std::pair<ProcessPtr, ProcessPtr>> ccs_project(const LocalizedRelation& r);

// Pairs each related couple with the full location relation.
LocalizedRelation ccs_lift(std::span<const std::pair<ProcessPtr, ProcessPtr>> pairs);

// Classical weak-bisimilarity decision on the finite LTS induced by the
// fragment. States are multisets of component guarded sums (graphs in the
// fragment are complete, so topology carries no information); independent of
// the located machinery.
Verdict ccs_weak_bisimilar(const ProcessPtr& p, const ProcessPtr& q,
                           std::size_t state_cap = kDefaultStateCap);

}  // namespace tccs

#endif
