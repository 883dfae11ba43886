#ifndef TCCS_LTS_HPP
#define TCCS_LTS_HPP

#include <set>
#include <vector>

#include "tccs/reduction.hpp"

namespace tccs {

// A strong labeled transition: fires one summand of one component at `at`,
// releasing the prefix's argument processes as new components.
struct LabeledTransition {
  PrefixSymbol symbol;
  Location at;
  ProcessPtr target;
  ResidualFn residual;                        // web(target) -> web(source)
  std::vector<std::vector<Location>> spawned; // L_i = web of the i-th argument, in web(target)
};

// tau* . labeled . tau*, with the three residual segments kept apart: the
// bisimulation conditions inspect rho(at), the composite, and membership of
// post-images in the spawned sets.
struct WeakTransition {
  PrefixSymbol symbol;
  Location at;                                // firing location, in web(mid)
  std::vector<std::vector<Location>> spawned; // M_i, subsets of web(mid_target)
  ResidualFn pre;                             // web(mid) -> web(source)
  ResidualFn mid;                             // web(mid_target) -> web(mid)
  ResidualFn post;                            // web(target) -> web(mid_target)
  ProcessPtr target;

  Location anchor() const { return pre(at); }
  ResidualFn composite() const {
    return ResidualFn::compose(ResidualFn::compose(pre, mid), post);
  }
};

// One transition per (location, summand) pair of every component; symbols
// whose base name is in the top-level restriction set are excluded.
std::vector<LabeledTransition> labeled_transitions(Workspace& ws, const ProcessPtr& p);

// Head symbols of all summands of all components, minus restricted names
// (both polarities).
std::set<PrefixSymbol> barbs(Workspace& ws, const ProcessPtr& p);

// All weak transitions for `symbol` whose tau-segments each stay within
// `bound` steps. Entries are deduplicated by observable signature (target
// canonical form, anchor, composite residual, spawned-index pattern).
// *complete is cleared when enumeration was truncated.
std::vector<WeakTransition> weak_transitions(Workspace& ws, const ProcessPtr& p,
                                             const PrefixSymbol& symbol, std::size_t bound,
                                             bool* complete = nullptr,
                                             std::size_t state_cap = kDefaultStateCap);

}  // namespace tccs

#endif
