#ifndef TCCS_PARSER_HPP
#define TCCS_PARSER_HPP

#include <map>
#include <string>
#include <vector>

#include "tccs/automata.hpp"
#include "tccs/process.hpp"
#include "tccs/signature.hpp"

namespace tccs {

struct Definition {
  std::string name;
  ProcessPtr process;
  // User-visible names of top-level `par` locations, for --rel specs and
  // readable output.
  std::map<std::string, Location> location_names;
};

struct SourceFile {
  Signature signature;
  std::vector<Definition> definitions;
  std::map<std::string, TreeAutomaton> automata;
  std::map<std::string, Tree> trees;

  const Definition* find_definition(const std::string& name) const;
};

// Parses the workbench source language:
//
//   sig f/2, a/0;
//   def P = co a.() | a.() | f.(a.(), co a.()) | co f.(a.(), co a.());
//   def S = mu X. a.(X) + b.(0);
//   def L = par {p: a.(0), q: b.(0)} edges {p-q} \ {b};
//   automaton A { X -f-> (X, X); X -a-> (); }
//   tree T = f(a, a);
//
// Every definition must classify as canonical or a diagnostic is raised.
SourceFile parse_source(const std::string& text);

// Parses a single process expression against a signature (used by tests and
// the CLI for ad-hoc expressions).
ProcessPtr parse_process(const std::string& text, const Signature& sig);

}  // namespace tccs

#endif
