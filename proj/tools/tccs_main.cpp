// Command-line front end: parse workbench files, run reductions, explore
// transition systems, decide/refute equivalences, and run tree-automaton
// recognition by interaction.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tccs/automata.hpp"
#include "tccs/ccs.hpp"
#include "tccs/dot.hpp"
#include "tccs/equivalence.hpp"
#include "tccs/errors.hpp"
#include "tccs/json_io.hpp"
#include "tccs/parser.hpp"
#include "tccs/pretty.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tccs::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw tccs::Error("cannot write " + path);
  out << content;
}

struct LoadedFile {
  tccs::SourceFile source;

  tccs::ProcessPtr process(const std::string& name) const {
    const tccs::Definition* d = source.find_definition(name);
    if (!d) throw tccs::Error("no definition named " + name);
    return tccs::located(tccs::fresh_copy(d->process));
  }

  const tccs::Definition& definition(const std::string& name) const {
    const tccs::Definition* d = source.find_definition(name);
    if (!d) throw tccs::Error("no definition named " + name);
    return *d;
  }
};

LoadedFile load(const std::string& path) { return {tccs::parse_source(read_file(path))}; }

int verdict_exit(const tccs::Verdict& v) {
  switch (v.result) {
    case tccs::VerdictResult::Yes: return kExitYes;
    case tccs::VerdictResult::No: return kExitNo;
    case tccs::VerdictResult::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

void print_verdict(const std::string& query, const tccs::Verdict& v) {
  std::cout << to_string(v.result) << "\n";
  std::cout << tccs::json_verdict(query, v).dump(2) << "\n";
}

// --rel full | empty | p1:q1,p2:q2 using the definitions' location names.
tccs::LocRel parse_rel(const std::string& spec, const tccs::Definition& left,
                       const tccs::Definition& right, const tccs::ProcessPtr& lp,
                       const tccs::ProcessPtr& rp) {
  const auto& lweb = tccs::web_of(lp);
  const auto& rweb = tccs::web_of(rp);
  if (spec.empty() || spec == "full") return tccs::rel_full(lweb, rweb);
  if (spec == "empty") return {};
  // Location names refer to the original definitions; the processes here are
  // fresh copies, so names are resolved by position in the sorted web.
  auto resolve = [](const tccs::Definition& def, const std::vector<tccs::Location>& web,
                    const std::string& name) -> tccs::Location {
    auto it = def.location_names.find(name);
    if (it == def.location_names.end()) throw tccs::Error("unknown location name " + name);
    const auto& oweb = tccs::web_of(def.process);
    auto pos = std::lower_bound(oweb.begin(), oweb.end(), it->second) - oweb.begin();
    if (pos >= static_cast<std::ptrdiff_t>(web.size()))
      throw tccs::Error("location name out of range: " + name);
    return web[pos];
  };
  tccs::LocRel rel;
  std::stringstream ss(spec);
  std::string pair;
  while (std::getline(ss, pair, ',')) {
    auto colon = pair.find(':');
    if (colon == std::string::npos) throw tccs::Error("bad --rel entry: " + pair);
    rel.emplace_back(resolve(left, lweb, pair.substr(0, colon)),
                     resolve(right, rweb, pair.substr(colon + 1)));
  }
  return tccs::rel_normalize(std::move(rel));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for graph-located tree processes"};
  app.require_subcommand(1);

  std::string file, proc, left, right, automaton, state, tree, rel_spec = "full";
  std::string dot_out, json_out, out = "-", what = "process";
  std::size_t steps = 64, bound = 64, max_context = 4;
  std::size_t recognize_bound = 0;  // 0 selects the size-based default
  bool trace = false, with_oracle = false;

  auto* reduce = app.add_subcommand("reduce", "run internal reductions");
  reduce->add_option("file", file)->required();
  reduce->add_option("--proc", proc)->required();
  reduce->add_option("--steps", steps);
  reduce->add_flag("--trace", trace);

  auto* lts = app.add_subcommand("lts", "emit the labeled transition graph");
  lts->add_option("file", file)->required();
  lts->add_option("--proc", proc)->required();
  lts->add_option("--dot", dot_out);
  lts->add_option("--json", json_out);
  lts->add_option("--bound", bound);

  auto* barbs_cmd = app.add_subcommand("barbs", "print the barbs of a process");
  barbs_cmd->add_option("file", file)->required();
  barbs_cmd->add_option("--proc", proc)->required();

  auto* bisim = app.add_subcommand("check-bisim", "localized weak bisimilarity");
  bisim->add_option("file", file)->required();
  bisim->add_option("--left", left)->required();
  bisim->add_option("--right", right)->required();
  bisim->add_option("--rel", rel_spec);
  bisim->add_option("--bound", bound);

  auto* barbed = app.add_subcommand("check-barbed", "weak barbed bisimilarity");
  barbed->add_option("file", file)->required();
  barbed->add_option("--left", left)->required();
  barbed->add_option("--right", right)->required();
  barbed->add_option("--bound", bound);

  auto* falsify = app.add_subcommand("falsify-congruence", "search for a separating context");
  falsify->add_option("file", file)->required();
  falsify->add_option("--left", left)->required();
  falsify->add_option("--right", right)->required();
  falsify->add_option("--max-context", max_context);
  falsify->add_option("--bound", bound);

  auto* recognize = app.add_subcommand("recognize", "tree recognition by interaction");
  recognize->add_option("file", file)->required();
  recognize->add_option("--automaton", automaton)->required();
  recognize->add_option("--state", state)->required();
  recognize->add_option("--tree", tree)->required();
  recognize->add_flag("--oracle", with_oracle);
  recognize->add_option("--bound", recognize_bound);

  auto* export_dot = app.add_subcommand("export-dot", "DOT exports");
  export_dot->add_option("file", file)->required();
  export_dot->add_option("--proc", proc)->required();
  export_dot->add_option("--what", what)->check(CLI::IsMember({"process", "reduction", "lts"}));
  export_dot->add_option("--out", out);
  export_dot->add_option("--bound", bound);

  auto* barbs_json = app.add_subcommand("export-json", "JSON exports");
  barbs_json->add_option("file", file)->required();
  barbs_json->add_option("--proc", proc)->required();
  barbs_json->add_option("--what", what)->check(CLI::IsMember({"process", "reduction", "lts"}));
  barbs_json->add_option("--out", out);
  barbs_json->add_option("--bound", bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (reduce->parsed()) {
      LoadedFile f = load(file);
      tccs::Workspace ws;
      tccs::ProcessPtr cur = f.process(proc);
      std::size_t k = 0;
      for (; k < steps; ++k) {
        auto redexes = tccs::enumerate_redexes(ws, cur);
        if (redexes.empty()) break;
        tccs::Step s = tccs::step(ws, cur, redexes.front());
        std::cout << "step " << (k + 1) << ": " << s.redex.symbol.display() << " between "
                  << to_string(s.redex.plain_at) << " and " << to_string(s.redex.co_at) << "\n";
        cur = s.reduct;
        if (trace) std::cout << "  " << tccs::pretty(cur) << "\n";
      }
      std::cout << k << " step(s); final: " << tccs::pretty(cur) << "\n";
      return kExitYes;
    }
    if (lts->parsed()) {
      LoadedFile f = load(file);
      tccs::Workspace ws;
      tccs::ProcessPtr p = f.process(proc);
      if (!dot_out.empty()) write_output(dot_out, tccs::dot_lts(ws, p, bound));
      if (!json_out.empty()) write_output(json_out, tccs::json_lts(ws, p, bound).dump(2) + "\n");
      if (dot_out.empty() && json_out.empty())
        std::cout << tccs::json_lts(ws, p, bound).dump(2) << "\n";
      return kExitYes;
    }
    if (barbs_cmd->parsed()) {
      LoadedFile f = load(file);
      tccs::Workspace ws;
      for (const auto& b : tccs::barbs(ws, f.process(proc))) std::cout << b.display() << "\n";
      return kExitYes;
    }
    if (bisim->parsed()) {
      LoadedFile f = load(file);
      tccs::Workspace ws;
      tccs::ProcessPtr lp = f.process(left);
      tccs::ProcessPtr rp = f.process(right);
      tccs::LocRel e = parse_rel(rel_spec, f.definition(left), f.definition(right), lp, rp);
      tccs::Verdict v = tccs::bisimilar(ws, lp, rp, e, bound).verdict;
      print_verdict("check-bisim", v);
      return verdict_exit(v);
    }
    if (barbed->parsed()) {
      LoadedFile f = load(file);
      tccs::Workspace ws;
      tccs::Verdict v = tccs::barbed_bisimilar(ws, f.process(left), f.process(right), bound);
      print_verdict("check-barbed", v);
      return verdict_exit(v);
    }
    if (falsify->parsed()) {
      LoadedFile f = load(file);
      tccs::Workspace ws;
      tccs::Verdict v = tccs::refute_congruence(ws, f.source.signature, f.process(left),
                                                f.process(right), max_context, bound);
      print_verdict("falsify-congruence", v);
      return verdict_exit(v);
    }
    if (recognize->parsed()) {
      LoadedFile f = load(file);
      auto it = f.source.automata.find(automaton);
      if (it == f.source.automata.end()) throw tccs::Error("no automaton named " + automaton);
      tccs::Tree t;
      auto tit = f.source.trees.find(tree);
      t = tit != f.source.trees.end() ? tit->second : tccs::parse_tree(tree);

      tccs::Workspace ws;
      tccs::Verdict v = tccs::recognize_by_interaction(ws, it->second, state, t, recognize_bound);
      std::cout << "interaction: " << to_string(v.result) << "\n";
      if (with_oracle) {
        bool oracle = tccs::recognizes_oracle(it->second, state, t);
        std::cout << "oracle: " << (oracle ? "yes" : "no") << "\n";
      }
      std::cout << tccs::json_verdict("recognize", v).dump(2) << "\n";
      return verdict_exit(v);
    }
    if (export_dot->parsed() || barbs_json->parsed()) {
      LoadedFile f = load(file);
      tccs::Workspace ws;
      tccs::ProcessPtr p = f.process(proc);
      tccs::PrettyOptions opts;
      bool dot = export_dot->parsed();
      std::string content;
      if (what == "process") {
        content = dot ? tccs::dot_process(p, opts) : tccs::json_process(p).dump(2) + "\n";
      } else if (what == "reduction") {
        tccs::ReductionGraph g = tccs::reduction_graph(ws, p, bound);
        content = dot ? tccs::dot_reduction_graph(g) : tccs::json_reduction_graph(g).dump(2) + "\n";
      } else {
        content = dot ? tccs::dot_lts(ws, p, bound) : tccs::json_lts(ws, p, bound).dump(2) + "\n";
      }
      write_output(out, content);
      return kExitYes;
    }
  } catch (const tccs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  } catch (const tccs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  std::cerr << "no subcommand\n";
  return kExitUsage;
}
