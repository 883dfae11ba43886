#ifndef TCCS_PROCESS_HPP
#define TCCS_PROCESS_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tccs/locgraph.hpp"
#include "tccs/signature.hpp"

namespace tccs {

class Process;
using ProcessPtr = std::shared_ptr<const Process>;

struct VarNode {
  std::string name;
};
struct FixNode {
  std::string var;
  ProcessPtr body;
};
struct PrefixNode {
  PrefixSymbol symbol;
  std::vector<ProcessPtr> args;
};
struct ParNode {
  LocGraph graph;
  // Sorted by location; domain equals graph.web() exactly (checked on
  // construction).
  std::vector<std::pair<Location, ProcessPtr>> components;
};
struct ZeroNode {};
struct SumNode {
  ProcessPtr left;
  ProcessPtr right;
};
struct RestrictNode {
  ProcessPtr body;
  std::vector<std::string> hidden;  // sorted, unique plain symbol names
};

// Immutable process term. Values are shared freely; all mutation happens by
// building new terms. Location ids are globally unique across terms built
// through this interface (see fresh_location), so sibling webs are disjoint
// by construction.
class Process {
 public:
  using Node =
      std::variant<VarNode, FixNode, PrefixNode, ParNode, ZeroNode, SumNode, RestrictNode>;

  static ProcessPtr var(std::string name);
  static ProcessPtr fix(std::string var, ProcessPtr body);
  static ProcessPtr prefix(PrefixSymbol symbol, std::vector<ProcessPtr> args);
  static ProcessPtr zero();
  static ProcessPtr sum(ProcessPtr left, ProcessPtr right);
  // Validates that the component domain equals the graph web.
  static ProcessPtr par(LocGraph graph, std::vector<std::pair<Location, ProcessPtr>> components);
  // The empty process (web = {}).
  static ProcessPtr empty();
  // Normalizes stacks: restricting a restriction unions the symbol sets;
  // an empty set is the identity.
  static ProcessPtr restrict(ProcessPtr body, std::vector<std::string> hidden);

  const Node& node() const { return node_; }

  const VarNode* as_var() const { return std::get_if<VarNode>(&node_); }
  const FixNode* as_fix() const { return std::get_if<FixNode>(&node_); }
  const PrefixNode* as_prefix() const { return std::get_if<PrefixNode>(&node_); }
  const ParNode* as_par() const { return std::get_if<ParNode>(&node_); }
  const ZeroNode* as_zero() const { return std::get_if<ZeroNode>(&node_); }
  const SumNode* as_sum() const { return std::get_if<SumNode>(&node_); }
  const RestrictNode* as_restrict() const { return std::get_if<RestrictNode>(&node_); }

 protected:
  explicit Process(Node node) : node_(std::move(node)) {}

 private:
  Node node_;
};

// Component lookup in a ParNode (domain is sorted).
const ProcessPtr& par_component(const ParNode& par, Location p);

// --- located views -------------------------------------------------------

// True if p is a Par, possibly under a restriction stack.
bool is_located(const ProcessPtr& p);

// The Par under the restriction stack of a located process.
const ParNode& located_par(const ProcessPtr& p);

// The restriction set of the (normalized) top-level stack; empty if none.
std::vector<std::string> restriction_set(const ProcessPtr& p);

// Rewraps a new Par body in the same restriction stack as `like`.
ProcessPtr rewrap_restriction(const ProcessPtr& like, ProcessPtr body);

// The web of a located process (restriction is transparent).
const std::vector<Location>& web_of(const ProcessPtr& p);

// Coerces a process usable at a located position into a Par:
//  - Par: unchanged;
//  - guarded sum or recursive guarded sum: a single fresh vertex carrying it;
//  - Restrict: coercion applied under the wrapper;
//  - Var: OpenProcess (a free variable has no web).
ProcessPtr located(const ProcessPtr& p);

// Full parallel composition: every component of p coherent with every
// component of q (both coerced to located form first).
ProcessPtr full_par(const ProcessPtr& p, const ProcessPtr& q);

// D-indexed parallel composition of two located processes.
ProcessPtr gplus_proc(const ProcessPtr& p,
                      std::span<const std::pair<Location, Location>> d, const ProcessPtr& q);

// --- term inspection ------------------------------------------------------

std::set<std::string> free_vars(const ProcessPtr& p);
bool is_closed(const ProcessPtr& p);

// Deep copy with every location id replaced by a fresh one.
ProcessPtr fresh_copy(const ProcessPtr& p);

// Checks that prefix arities match the signature everywhere; returns the
// offending symbol name if not.
std::optional<std::string> arity_violation(const ProcessPtr& p, const Signature& sig);

// Collects every symbol name occurring in prefixes.
std::set<std::string> symbols_of(const ProcessPtr& p);

}  // namespace tccs

#endif
