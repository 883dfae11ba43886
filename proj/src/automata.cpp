#include "tccs/automata.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tccs/errors.hpp"
#include "tccs/syntax_ops.hpp"

namespace tccs {

std::size_t Tree::size() const {
  std::size_t n = 1;
  for (const Tree& c : children) n += c.size();
  return n;
}

std::string Tree::to_string() const {
  if (children.empty()) return symbol;
  std::string out = symbol + "(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ", ";
    out += children[i].to_string();
  }
  return out + ")";
}

namespace {

struct TreeParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw ParseError("expected a symbol name", 1, static_cast<int>(pos + 1));
    return text.substr(start, pos - start);
  }

  Tree term() {
    Tree t;
    t.symbol = ident();
    if (eat('(')) {
      skip();
      if (!eat(')')) {
        do {
          t.children.push_back(term());
        } while (eat(','));
        if (!eat(')')) throw ParseError("expected ')'", 1, static_cast<int>(pos + 1));
      }
    }
    return t;
  }
};

}  // namespace

Tree parse_tree(const std::string& text) {
  TreeParser p{text};
  Tree t = p.term();
  p.skip();
  if (p.pos != text.size())
    throw ParseError("trailing input after tree term", 1, static_cast<int>(p.pos + 1));
  return t;
}

bool TreeAutomaton::has_state(const std::string& x) const {
  return std::find(states.begin(), states.end(), x) != states.end();
}

std::vector<TreeAutomaton::Transition> TreeAutomaton::transitions_from(
    const std::string& x) const {
  std::vector<Transition> out;
  for (const auto& t : transitions)
    if (t.from == x) out.push_back(t);
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
    if (a.symbol != b.symbol) return a.symbol < b.symbol;
    return a.targets < b.targets;
  });
  return out;
}

bool recognizes_oracle(const TreeAutomaton& a, const std::string& state, const Tree& t) {
  if (!a.has_state(state)) throw UnknownState("unknown automaton state: " + state);
  for (const auto& tr : a.transitions_from(state)) {
    if (tr.symbol != t.symbol || tr.targets.size() != t.children.size()) continue;
    bool all = true;
    for (std::size_t i = 0; i < tr.targets.size(); ++i)
      if (!recognizes_oracle(a, tr.targets[i], t.children[i])) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

namespace {

ProcessPtr encode_state(const TreeAutomaton& a, const std::string& x,
                        std::set<std::string>& bound) {
  if (bound.count(x)) return Process::var(x);
  bound.insert(x);
  std::vector<ProcessPtr> parts;
  for (const auto& tr : a.transitions_from(x)) {
    std::vector<ProcessPtr> args;
    args.reserve(tr.targets.size());
    for (const auto& y : tr.targets) args.push_back(encode_state(a, y, bound));
    parts.push_back(Process::prefix(plain(tr.symbol), std::move(args)));
  }
  bound.erase(x);
  // Right-nested sum of the prefixed summands.
  ProcessPtr body;
  for (std::size_t i = parts.size(); i-- > 0;)
    body = body ? Process::sum(parts[i], std::move(body)) : parts[i];
  if (!body) body = Process::zero();
  return Process::fix(x, std::move(body));
}

}  // namespace

ProcessPtr encode_automaton(const TreeAutomaton& a, const std::string& state) {
  if (!a.has_state(state)) throw UnknownState("unknown automaton state: " + state);
  std::set<std::string> bound;
  return encode_state(a, state, bound);
}

ProcessPtr encode_tree(const Tree& t) {
  std::vector<ProcessPtr> args;
  args.reserve(t.children.size());
  for (const Tree& c : t.children) args.push_back(encode_tree(c));
  return Process::prefix(co(t.symbol), std::move(args));
}

Verdict recognize_by_interaction(Workspace& ws, const TreeAutomaton& a, const std::string& state,
                                 const Tree& t, std::size_t bound, std::size_t state_cap) {
  if (bound == 0) bound = t.size() * std::max<std::size_t>(1, a.transitions.size()) * 4;
  ProcessPtr composed = full_par(encode_automaton(a, state), encode_tree(t));
  TauClosure closure;
  try {
    closure = tau_closure(ws, composed, bound, state_cap);
  } catch (const StateSpaceExceeded& e) {
    return {VerdictResult::Unknown,
            Witness{"transition", std::string("search aborted: ") + e.what(), {}}};
  }
  for (const auto& e : closure.entries) {
    if (web_of(e.state).empty())
      return {VerdictResult::Yes,
              Witness{"transition", "the composed process reduces to the empty process", {}}};
  }
  if (closure.complete)
    return {VerdictResult::No,
            Witness{"transition", "complete reduction closure never reaches the empty process",
                    {}}};
  return {VerdictResult::Unknown,
          Witness{"transition", "reduction closure truncated before a verdict", {}}};
}

}  // namespace tccs
