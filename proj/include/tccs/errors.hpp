#ifndef TCCS_ERRORS_HPP
#define TCCS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tccs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph construction errors.
struct VertexNotInWeb : Error { using Error::Error; };
struct WebsNotDisjoint : Error { using Error::Error; };
struct RelationOutOfRange : Error { using Error::Error; };

// Canonicalization bailout: the caller falls back to pairwise iso checks.
struct WebTooLarge : Error { using Error::Error; };

// Syntax-level errors.
struct NotRecursiveGuardedSum : Error { using Error::Error; };
struct NotGuardedSum : Error { using Error::Error; };
struct UnfoldLimitExceeded : Error { using Error::Error; };
struct OpenProcess : Error { using Error::Error; };

// Reduction / exploration.
struct InvalidRedex : Error { using Error::Error; };
struct StateSpaceExceeded : Error { using Error::Error; };

// Equivalence machinery.
struct MalformedRelation : Error { using Error::Error; };
struct NotAdapted : Error { using Error::Error; };
struct NotCCSFragment : Error { using Error::Error; };

// Automata.
struct UnknownState : Error { using Error::Error; };

// Frontend.
struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int l, int c)
      : Error(msg + " (line " + std::to_string(l) + ", column " + std::to_string(c) + ")"),
        line(l), column(c) {}
};

}  // namespace tccs

#endif
