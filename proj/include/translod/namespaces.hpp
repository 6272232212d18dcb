#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "translod/error.hpp"
#include "translod/term.hpp"

namespace translod {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view void_ = "http://rdfs.org/ns/void#";
inline constexpr std::string_view dcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view passim = "http://data.lirmm.fr/ontologies/passim#";
inline constexpr std::string_view neptune = "http://data.lirmm.fr/ontologies/neptune#";
}  // namespace ns

inline Iri rdf_type() { return Iri{std::string(ns::rdf) + "type"}; }
inline Iri xsd_type(std::string_view local) { return Iri{std::string(ns::xsd) + std::string(local)}; }

/// Prefix -> namespace IRI bindings. The seven built-ins are always present.
class NamespaceMap {
 public:
  NamespaceMap() {
    bind("rdf", std::string(ns::rdf));
    bind("rdfs", std::string(ns::rdfs));
    bind("owl", std::string(ns::owl));
    bind("xsd", std::string(ns::xsd));
    bind("void", std::string(ns::void_));
    bind("dcterms", std::string(ns::dcterms));
    bind("passim", std::string(ns::passim));
    bind("neptune", std::string(ns::neptune));
  }

  static const NamespaceMap& builtins() {
    static const NamespaceMap m;
    return m;
  }

  void bind(std::string prefix, std::string iri) {
    bindings_[std::move(prefix)] = Iri{std::move(iri)};
  }

  bool has(std::string_view prefix) const {
    return bindings_.find(std::string(prefix)) != bindings_.end();
  }

  const Iri& lookup(const std::string& prefix) const {
    auto it = bindings_.find(prefix);
    if (it == bindings_.end()) throw UnknownPrefixError(prefix);
    return it->second;
  }

  const std::map<std::string, Iri>& bindings() const { return bindings_; }

  /// Longest-namespace compaction: <http://...#local> -> (prefix, local).
  /// Fails when no binding covers the IRI or the remainder is not a safe
  /// local name.
  std::optional<std::pair<std::string, std::string>> compact(const Iri& iri) const {
    const std::string* best_prefix = nullptr;
    const Iri* best_ns = nullptr;
    for (const auto& [prefix, nsiri] : bindings_) {
      if (iri.value.size() > nsiri.value.size() &&
          iri.value.compare(0, nsiri.value.size(), nsiri.value) == 0) {
        if (!best_ns || nsiri.value.size() > best_ns->value.size()) {
          best_prefix = &prefix;
          best_ns = &nsiri;
        }
      }
    }
    if (!best_ns) return std::nullopt;
    std::string local = iri.value.substr(best_ns->value.size());
    if (!valid_local_name(local)) return std::nullopt;
    return std::make_pair(*best_prefix, std::move(local));
  }

  /// Conservative qname local part: leading letter or '_', then letters,
  /// digits, '_' or '-'. Anything else stays a full IRI.
  static bool valid_local_name(std::string_view local) {
    if (local.empty()) return false;
    char c0 = local[0];
    if (!((c0 >= 'A' && c0 <= 'Z') || (c0 >= 'a' && c0 <= 'z') || c0 == '_'))
      return false;
    for (char c : local) {
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                (c >= '0' && c <= '9') || c == '_' || c == '-';
      if (!ok) return false;
    }
    return true;
  }

 private:
  std::map<std::string, Iri> bindings_;
};

/// Expands "prefix:local" against the map. The qname must contain exactly
/// one ':'; the prefix must be bound.
inline Iri expand_qname(std::string_view qname, const NamespaceMap& nsmap) {
  std::size_t colon = qname.find(':');
  if (colon == std::string_view::npos)
    throw Error("not a qname (no ':'): " + std::string(qname));
  if (qname.find(':', colon + 1) != std::string_view::npos)
    throw Error("not a qname (multiple ':'): " + std::string(qname));
  std::string prefix(qname.substr(0, colon));
  std::string local(qname.substr(colon + 1));
  return Iri{nsmap.lookup(prefix).value + local};
}

}  // namespace translod
