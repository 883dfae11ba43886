#ifndef TCCS_DOT_HPP
#define TCCS_DOT_HPP

#include <string>

#include "tccs/lts.hpp"
#include "tccs/pretty.hpp"
#include "tccs/reduction.hpp"

namespace tccs {

// One node per location labeled with its guarded sum, one undirected edge
// per coherence pair.
std::string dot_process(const ProcessPtr& p, const PrettyOptions& opts = {});

// Nodes are canonical states, edges are reduction steps labeled by the
// interaction symbol.
std::string dot_reduction_graph(const ReductionGraph& g);

// The labeled transition graph: tau edges plus labeled edges.
std::string dot_lts(Workspace& ws, const ProcessPtr& root, std::size_t bound,
                    std::size_t state_cap = kDefaultStateCap);

}  // namespace tccs

#endif
