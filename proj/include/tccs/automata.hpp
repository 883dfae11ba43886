#ifndef TCCS_AUTOMATA_HPP
#define TCCS_AUTOMATA_HPP

#include <string>
#include <vector>

#include "tccs/equivalence.hpp"
#include "tccs/process.hpp"
#include "tccs/signature.hpp"

namespace tccs {

struct Tree {
  std::string symbol;
  std::vector<Tree> children;

  std::size_t size() const;  // number of nodes
  std::string to_string() const;
  bool operator==(const Tree&) const = default;
};

// Term syntax: `f(a, g(b))`; a leaf may omit the parentheses.
Tree parse_tree(const std::string& text);

struct TreeAutomaton {
  struct Transition {
    std::string from;
    std::string symbol;
    std::vector<std::string> targets;

    auto operator<=>(const Transition&) const = default;
  };

  std::vector<std::string> states;  // sorted, unique
  std::vector<Transition> transitions;

  bool has_state(const std::string& x) const;
  // Transitions from x, in the deterministic order used by the encoding
  // (lexicographic on symbol then target states).
  std::vector<Transition> transitions_from(const std::string& x) const;
};

// Classical least-fixpoint membership; the oracle side of the recognition
// theorem.
bool recognizes_oracle(const TreeAutomaton& a, const std::string& state, const Tree& t);

// The process of an automaton state: mu-expansion over the transitions, with
// already-bound states kept as variables. Closed by construction.
ProcessPtr encode_automaton(const TreeAutomaton& a, const std::string& state);

// The dual process of a tree: co-prefixes all the way down.
ProcessPtr encode_tree(const Tree& t);

// Yes iff the full composition of the two encodings reduces to the empty
// process; No when the (complete) closure lacks it; Unknown on truncation.
// bound = 0 selects the default size(t) * |transitions| * 4.
Verdict recognize_by_interaction(Workspace& ws, const TreeAutomaton& a, const std::string& state,
                                 const Tree& t, std::size_t bound = 0,
                                 std::size_t state_cap = kDefaultStateCap);

}  // namespace tccs

#endif
