#include "tccs/pretty.hpp"

namespace tccs {

namespace {

std::string loc_name(Location l, const PrettyOptions& opts) {
  auto it = opts.location_names.find(l);
  if (it != opts.location_names.end()) return it->second;
  return to_string(l);
}

// Precedence: restrict > sum > (atoms); par blocks and prefixes are atoms.
enum class Ctx { Top, SumArm };

std::string pp(const ProcessPtr& p, const PrettyOptions& opts, Ctx ctx) {
  if (const auto* v = p->as_var()) return v->name;
  if (p->as_zero()) return "0";
  if (const auto* f = p->as_fix()) {
    std::string s = "mu " + f->var + ". " + pp(f->body, opts, Ctx::Top);
    return ctx == Ctx::SumArm ? "(" + s + ")" : s;
  }
  if (const auto* pr = p->as_prefix()) {
    std::string s = pr->symbol.display() + ".(";
    for (std::size_t i = 0; i < pr->args.size(); ++i) {
      if (i) s += ", ";
      s += pp(pr->args[i], opts, Ctx::Top);
    }
    return s + ")";
  }
  if (const auto* s = p->as_sum()) {
    std::string out = pp(s->left, opts, Ctx::SumArm) + " + " + pp(s->right, opts, Ctx::SumArm);
    return ctx == Ctx::SumArm ? "(" + out + ")" : out;
  }
  if (const auto* r = p->as_restrict()) {
    std::string out = pp(r->body, opts, Ctx::SumArm) + " \\ {";
    for (std::size_t i = 0; i < r->hidden.size(); ++i) {
      if (i) out += ", ";
      out += r->hidden[i];
    }
    return out + "}";
  }
  const auto* par = p->as_par();
  if (par->graph.web().empty()) return "eps";
  std::string out = "par {";
  bool first = true;
  for (const auto& [l, c] : par->components) {
    if (!first) out += ", ";
    first = false;
    out += loc_name(l, opts) + ": " + pp(c, opts, Ctx::Top);
  }
  out += "}";
  if (!par->graph.edges().empty()) {
    out += " edges {";
    first = true;
    for (const auto& [a, b] : par->graph.edges()) {
      if (!first) out += ", ";
      first = false;
      out += loc_name(a, opts) + "-" + loc_name(b, opts);
    }
    out += "}";
  }
  return out;
}

}  // namespace

std::string pretty(const ProcessPtr& p, const PrettyOptions& opts) {
  return pp(p, opts, Ctx::Top);
}

}  // namespace tccs
