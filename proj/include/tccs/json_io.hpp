#ifndef TCCS_JSON_IO_HPP
#define TCCS_JSON_IO_HPP

#include <json.hpp>

#include "tccs/equivalence.hpp"
#include "tccs/process.hpp"
#include "tccs/reduction.hpp"

namespace tccs {

// All emitted documents carry "schema": 1.
inline constexpr int kJsonSchema = 1;

nlohmann::json json_process(const ProcessPtr& p);
nlohmann::json json_verdict(const std::string& query, const Verdict& v);
nlohmann::json json_reduction_graph(const ReductionGraph& g);
nlohmann::json json_lts(Workspace& ws, const ProcessPtr& root, std::size_t bound,
                        std::size_t state_cap = kDefaultStateCap);

}  // namespace tccs

#endif
