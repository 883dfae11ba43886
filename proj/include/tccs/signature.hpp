#ifndef TCCS_SIGNATURE_HPP
#define TCCS_SIGNATURE_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tccs {

enum class Polarity { Plain, Co };

// An occurrence of a ranked symbol, possibly on the co side. Co-symbols are
// not separate signature entries: the polarity bit lives on the occurrence
// and dual() is an involution.
struct PrefixSymbol {
  std::string name;
  Polarity polarity = Polarity::Plain;

  PrefixSymbol dual() const {
    return {name, polarity == Polarity::Plain ? Polarity::Co : Polarity::Plain};
  }
  bool is_co() const { return polarity == Polarity::Co; }

  // Compact reparseable rendering: `f` or `f~`.
  std::string display() const { return is_co() ? name + "~" : name; }

  auto operator<=>(const PrefixSymbol&) const = default;
};

inline PrefixSymbol plain(std::string name) { return {std::move(name), Polarity::Plain}; }
inline PrefixSymbol co(std::string name) { return {std::move(name), Polarity::Co}; }

// A ranked signature: symbol name -> arity. Names are unique by the map
// representation.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::pair<const std::string, std::size_t>> init)
      : arities_(init) {}

  void declare(const std::string& name, std::size_t arity) { arities_[name] = arity; }
  bool declared(const std::string& name) const { return arities_.count(name) != 0; }
  std::optional<std::size_t> arity(const std::string& name) const {
    auto it = arities_.find(name);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
  }
  const std::map<std::string, std::size_t>& arities() const { return arities_; }

  std::vector<std::string> symbol_names() const {
    std::vector<std::string> out;
    out.reserve(arities_.size());
    for (const auto& [n, _] : arities_) out.push_back(n);
    return out;
  }

 private:
  std::map<std::string, std::size_t> arities_;
};

}  // namespace tccs

#endif
