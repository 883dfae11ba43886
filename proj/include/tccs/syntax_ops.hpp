#ifndef TCCS_SYNTAX_OPS_HPP
#define TCCS_SYNTAX_OPS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tccs/process.hpp"

namespace tccs {

// The three-way mutual induction over process shapes. Guarded sums and
// recursive guarded sums are accepted wherever a canonical process is
// expected (they stand for a single located component).
enum class CanonicalClass {
  CanonicalProcess,
  CanonicalGuardedSum,
  RecursiveCanonicalGuardedSum,
  NotCanonical,
};

CanonicalClass classify(const ProcessPtr& p);

inline bool is_guarded_sum(CanonicalClass c) { return c == CanonicalClass::CanonicalGuardedSum; }
inline bool is_rec_guarded_sum(CanonicalClass c) {
  return c == CanonicalClass::CanonicalGuardedSum ||
         c == CanonicalClass::RecursiveCanonicalGuardedSum;
}
inline bool is_canonical(CanonicalClass c) { return c != CanonicalClass::NotCanonical; }

std::string to_string(CanonicalClass c);

// Capture-avoiding substitution of every free occurrence of x in r by an
// alpha-fresh copy of p (fresh locations per occurrence). Substituting into
// a parallel component that is the bare variable splices p's graph into the
// composition.
ProcessPtr substitute_var(const ProcessPtr& r, const ProcessPtr& p, const std::string& x);

inline constexpr std::size_t kCansumUnfoldLimit = 10'000;

// Unfolds a recursive guarded sum into a plain guarded sum by mu-expansion.
// Total on canonical inputs; the unfold limit only guards against
// non-canonical terms slipping past the precondition.
ProcessPtr cansum(const ProcessPtr& s, std::size_t unfold_limit = kCansumUnfoldLimit);

// Flattens a guarded sum into its prefixed summands, in syntactic order.
std::vector<std::pair<PrefixSymbol, std::vector<ProcessPtr>>> summands(const ProcessPtr& gs);

}  // namespace tccs

#endif
