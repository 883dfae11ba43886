#include "tccs/parser.hpp"

#include <algorithm>
#include <cctype>

#include "tccs/errors.hpp"
#include "tccs/pretty.hpp"
#include "tccs/syntax_ops.hpp"

namespace tccs {

const Definition* SourceFile::find_definition(const std::string& name) const {
  for (const auto& d : definitions)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

enum class Tok {
  End, Ident, Number,
  Semi, Comma, Dot, LParen, RParen, LBrace, RBrace,
  Bar, Plus, Backslash, Slash, Tilde, Colon, Dash, Arrow, Equals,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { next(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, tok_.line, tok_.col);
  }

 private:
  void next() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = {Tok::End, "", line_, col_};
    if (pos_ >= text_.size()) return;

    char c = text_[pos_];
    auto single = [&](Tok k) {
      tok_ = {k, std::string(1, c), line_, col_};
      ++pos_;
      ++col_;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      int startcol = col_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
        ++col_;
      }
      tok_ = {Tok::Ident, text_.substr(start, pos_ - start), line_, startcol};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      int startcol = col_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++col_;
      }
      tok_ = {Tok::Number, text_.substr(start, pos_ - start), line_, startcol};
      return;
    }
    switch (c) {
      case ';': single(Tok::Semi); return;
      case ',': single(Tok::Comma); return;
      case '.': single(Tok::Dot); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '{': single(Tok::LBrace); return;
      case '}': single(Tok::RBrace); return;
      case '|': single(Tok::Bar); return;
      case '+': single(Tok::Plus); return;
      case '\\': single(Tok::Backslash); return;
      case '/': single(Tok::Slash); return;
      case '~': single(Tok::Tilde); return;
      case ':': single(Tok::Colon); return;
      case '=': single(Tok::Equals); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          tok_ = {Tok::Arrow, "->", line_, col_};
          pos_ += 2;
          col_ += 2;
        } else {
          single(Tok::Dash);
        }
        return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_{Tok::End, "", 1, 1};
};

class Parser {
 public:
  Parser(const std::string& text) : lex_(text) {}

  SourceFile file() {
    SourceFile out;
    while (lex_.peek().kind != Tok::End) {
      const Token& t = lex_.peek();
      if (t.kind != Tok::Ident) lex_.fail("expected a declaration");
      if (t.text == "sig") {
        parse_sig(out.signature);
      } else if (t.text == "def") {
        parse_def(out);
      } else if (t.text == "automaton") {
        parse_automaton(out);
      } else if (t.text == "tree") {
        parse_treedef(out);
      } else {
        lex_.fail("expected 'sig', 'def', 'automaton' or 'tree'");
      }
    }
    return out;
  }

  ProcessPtr expression(const Signature& sig) {
    sig_ = sig;
    ProcessPtr p = proc();
    if (lex_.peek().kind != Tok::End) lex_.fail("trailing input after process");
    return p;
  }

 private:
  Token expect(Tok k, const std::string& what) {
    if (lex_.peek().kind != k) lex_.fail("expected " + what);
    return lex_.take();
  }

  std::string ident(const std::string& what) { return expect(Tok::Ident, what).text; }

  void parse_sig(Signature& sig) {
    lex_.take();  // sig
    do {
      std::string name = ident("symbol name");
      expect(Tok::Slash, "'/' and an arity");
      Token n = expect(Tok::Number, "an arity");
      sig.declare(name, static_cast<std::size_t>(std::stoul(n.text)));
    } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
    expect(Tok::Semi, "';'");
    sig_ = sig;
  }

  void parse_def(SourceFile& out) {
    Token kw = lex_.take();  // def
    std::string name = ident("definition name");
    if (out.find_definition(name))
      throw ParseError("duplicate definition " + name, kw.line, kw.col);
    expect(Tok::Equals, "'='");
    loc_names_.clear();
    defs_ = &out;
    ProcessPtr p = proc();
    expect(Tok::Semi, "';'");
    CanonicalClass c = classify(p);
    if (c == CanonicalClass::NotCanonical)
      throw ParseError("definition " + name + " is not canonical: " + noncanonical_reason(p),
                       kw.line, kw.col);
    out.definitions.push_back({name, std::move(p), loc_names_});
    defs_ = nullptr;
  }

  void parse_automaton(SourceFile& out) {
    Token kw = lex_.take();  // automaton
    std::string name = ident("automaton name");
    if (out.automata.count(name))
      throw ParseError("duplicate automaton " + name, kw.line, kw.col);
    TreeAutomaton a;
    expect(Tok::LBrace, "'{'");
    auto add_state = [&a](const std::string& s) {
      if (!a.has_state(s)) a.states.push_back(s);
    };
    while (lex_.peek().kind != Tok::RBrace) {
      std::string first = ident("a state or 'states'");
      if (first == "states") {
        do {
          add_state(ident("state name"));
        } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
        expect(Tok::Semi, "';'");
        continue;
      }
      add_state(first);
      expect(Tok::Dash, "'-symbol->'");
      std::string sym = ident("transition symbol");
      auto arity = sig_.arity(sym);
      if (!arity) lex_.fail("undeclared symbol " + sym);
      expect(Tok::Arrow, "'->'");
      expect(Tok::LParen, "'('");
      std::vector<std::string> targets;
      if (lex_.peek().kind != Tok::RParen) {
        do {
          std::string st = ident("target state");
          add_state(st);
          targets.push_back(st);
        } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Semi, "';'");
      if (targets.size() != *arity)
        lex_.fail("arity mismatch: " + sym + " takes " + std::to_string(*arity) + " targets");
      a.transitions.push_back({first, sym, std::move(targets)});
    }
    lex_.take();  // }
    std::sort(a.states.begin(), a.states.end());
    out.automata.emplace(name, std::move(a));
  }

  void parse_treedef(SourceFile& out) {
    Token kw = lex_.take();  // tree
    std::string name = ident("tree name");
    if (out.trees.count(name)) throw ParseError("duplicate tree " + name, kw.line, kw.col);
    expect(Tok::Equals, "'='");
    Tree t = term();
    expect(Tok::Semi, "';'");
    check_tree(t);
    out.trees.emplace(name, std::move(t));
  }

  Tree term() {
    Tree t;
    t.symbol = ident("a symbol");
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      if (lex_.peek().kind != Tok::RParen) {
        do {
          t.children.push_back(term());
        } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
      }
      expect(Tok::RParen, "')'");
    }
    return t;
  }

  void check_tree(const Tree& t) {
    auto arity = sig_.arity(t.symbol);
    if (!arity) lex_.fail("undeclared symbol " + t.symbol);
    if (*arity != t.children.size())
      lex_.fail("arity mismatch: " + t.symbol + "/" + std::to_string(*arity));
    for (const Tree& c : t.children) check_tree(c);
  }

  // proc := restrict ('|' restrict)*; restrict := sum ('\' {names})*;
  // sum := atom ('+' atom)*.
  ProcessPtr proc() {
    ProcessPtr p = restrict_level();
    while (lex_.peek().kind == Tok::Bar) {
      lex_.take();
      ProcessPtr q = restrict_level();
      p = full_par_ctx(p, q);
    }
    return p;
  }

  // The hole of a context may sit under a parallel bar; wrap bare variables
  // so that full composition has a vertex to splice into later.
  ProcessPtr full_par_ctx(const ProcessPtr& p, const ProcessPtr& q) {
    auto wrap = [](const ProcessPtr& x) -> ProcessPtr {
      if (!x->as_var()) return x;
      Location l = fresh_location();
      return Process::par(LocGraph::single(l), {{l, x}});
    };
    return full_par(wrap(p), wrap(q));
  }

  ProcessPtr sum_level() {
    std::vector<ProcessPtr> arms{atom()};
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      arms.push_back(atom());
    }
    ProcessPtr p;
    for (std::size_t i = arms.size(); i-- > 0;)
      p = p ? Process::sum(arms[i], std::move(p)) : arms[i];
    return p;
  }

  ProcessPtr restrict_level() {
    ProcessPtr p = sum_level();
    while (lex_.peek().kind == Tok::Backslash) {
      lex_.take();
      expect(Tok::LBrace, "'{'");
      std::vector<std::string> hidden;
      if (lex_.peek().kind != Tok::RBrace) {
        do {
          std::string n = ident("symbol name");
          if (!sig_.declared(n)) lex_.fail("undeclared symbol " + n);
          hidden.push_back(n);
        } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
      }
      expect(Tok::RBrace, "'}'");
      p = Process::restrict(std::move(p), std::move(hidden));
    }
    return p;
  }

  ProcessPtr atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Number) {
      if (t.text != "0") lex_.fail("unexpected number");
      lex_.take();
      return Process::zero();
    }
    if (t.kind == Tok::LParen) {
      lex_.take();
      ProcessPtr p = proc();
      expect(Tok::RParen, "')'");
      return p;
    }
    if (t.kind != Tok::Ident) lex_.fail("expected a process");

    std::string name = lex_.take().text;
    if (name == "eps") return Process::empty();
    if (name == "mu") {
      std::string var = ident("a variable");
      expect(Tok::Dot, "'.'");
      bound_.push_back(var);
      ProcessPtr body = sum_level();
      bound_.pop_back();
      return Process::fix(var, std::move(body));
    }
    if (name == "co") {
      std::string sym = ident("a symbol");
      return prefix_tail(sym, Polarity::Co);
    }
    if (name == "par") return par_block();

    // `f~.(...)` / `f.(...)` are prefixes; a bare identifier is a bound
    // variable, a reference to an earlier definition, or a free variable.
    if (lex_.peek().kind == Tok::Tilde) {
      lex_.take();
      return prefix_tail(name, Polarity::Co);
    }
    if (lex_.peek().kind == Tok::Dot) return prefix_tail(name, Polarity::Plain);

    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == name) return Process::var(name);
    if (defs_) {
      if (const Definition* d = defs_->find_definition(name)) return fresh_copy(d->process);
    }
    return Process::var(name);
  }

  ProcessPtr prefix_tail(const std::string& sym, Polarity pol) {
    auto arity = sig_.arity(sym);
    if (!arity) lex_.fail("undeclared symbol " + sym);
    expect(Tok::Dot, "'.'");
    expect(Tok::LParen, "'('");
    std::vector<ProcessPtr> args;
    if (lex_.peek().kind != Tok::RParen) {
      do {
        args.push_back(proc());
      } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
    }
    expect(Tok::RParen, "')'");
    if (args.size() != *arity)
      lex_.fail("arity mismatch: " + sym + "/" + std::to_string(*arity) + " applied to " +
                std::to_string(args.size()) + " arguments");
    return Process::prefix({sym, pol}, std::move(args));
  }

  ProcessPtr par_block() {
    expect(Tok::LBrace, "'{'");
    std::vector<std::pair<std::string, ProcessPtr>> comps;
    std::map<std::string, Location> names;
    if (lex_.peek().kind != Tok::RBrace) {
      do {
        std::string loc = ident("a location name");
        if (names.count(loc)) lex_.fail("duplicate location " + loc);
        expect(Tok::Colon, "':'");
        ProcessPtr c = sum_level();
        if (!is_rec_guarded_sum(classify(c)))
          lex_.fail("component at " + loc + " is not a guarded sum");
        names.emplace(loc, fresh_location());
        comps.emplace_back(loc, std::move(c));
      } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
    }
    expect(Tok::RBrace, "'}'");
    std::vector<LocGraph::Edge> edges;
    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "edges") {
      lex_.take();
      expect(Tok::LBrace, "'{'");
      if (lex_.peek().kind != Tok::RBrace) {
        do {
          std::string a = ident("a location name");
          expect(Tok::Dash, "'-'");
          std::string b = ident("a location name");
          if (!names.count(a) || !names.count(b)) lex_.fail("edge endpoint not a location");
          if (a == b) lex_.fail("coherence is irreflexive");
          edges.emplace_back(names[a], names[b]);
        } while (lex_.peek().kind == Tok::Comma && (lex_.take(), true));
      }
      expect(Tok::RBrace, "'}'");
    }
    std::vector<Location> web;
    std::vector<std::pair<Location, ProcessPtr>> located_comps;
    for (auto& [n, c] : comps) {
      web.push_back(names[n]);
      located_comps.emplace_back(names[n], std::move(c));
    }
    // Remember user names for the CLI and readable output (first block wins
    // on clashes).
    for (const auto& [n, l] : names) loc_names_.emplace(n, l);
    return Process::par(LocGraph(std::move(web), std::move(edges)), std::move(located_comps));
  }

  std::string noncanonical_reason(const ProcessPtr& p) {
    switch (classify(p)) {
      case CanonicalClass::NotCanonical: break;
      default: return "";
    }
    if (const auto* f = p->as_fix()) {
      std::string inner = noncanonical_reason(f->body);
      if (!inner.empty()) return inner;
      return "mu body '" + pretty(f->body) + "' is not a guarded sum";
    }
    if (const auto* s = p->as_sum()) {
      for (const auto& arm : {s->left, s->right}) {
        if (!is_guarded_sum(classify(arm))) {
          std::string inner = noncanonical_reason(arm);
          if (!inner.empty()) return inner;
          return "sum arm '" + pretty(arm) + "' is not a guarded sum";
        }
      }
    }
    if (const auto* pr = p->as_prefix()) {
      for (const auto& a : pr->args)
        if (!is_canonical(classify(a))) {
          std::string inner = noncanonical_reason(a);
          if (!inner.empty()) return inner;
          return "prefix argument '" + pretty(a) + "' is not canonical";
        }
    }
    if (const auto* par = p->as_par()) {
      for (const auto& [l, c] : par->components)
        if (!is_rec_guarded_sum(classify(c))) {
          std::string inner = noncanonical_reason(c);
          if (!inner.empty()) return inner;
          return "component '" + pretty(c) + "' is not a guarded sum";
        }
    }
    if (const auto* r = p->as_restrict()) return noncanonical_reason(r->body);
    return "subterm '" + pretty(p) + "' is not canonical";
  }

  Lexer lex_;
  Signature sig_;
  SourceFile* defs_ = nullptr;
  std::vector<std::string> bound_;
  std::map<std::string, Location> loc_names_;
};

}  // namespace

SourceFile parse_source(const std::string& text) {
  Parser p(text);
  return p.file();
}

ProcessPtr parse_process(const std::string& text, const Signature& sig) {
  Parser p(text);
  return p.expression(sig);
}

}  // namespace tccs
