#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "translod/error.hpp"
#include "translod/text.hpp"

namespace translod {

/// Absolute IRI. Construction does not validate; parsers at the input
/// boundaries call is_valid / checked.
struct Iri {
  std::string value;

  auto operator<=>(const Iri&) const = default;

  static bool is_valid(std::string_view v) {
    if (v.empty()) return false;
    std::size_t colon = v.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    if (!((v[0] >= 'A' && v[0] <= 'Z') || (v[0] >= 'a' && v[0] <= 'z'))) return false;
    for (std::size_t i = 1; i < colon; ++i) {
      char c = v[i];
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
      if (!ok) return false;
    }
    for (char c : v) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '>')
        return false;
    }
    return true;
  }

  static Iri checked(std::string v) {
    if (!is_valid(v)) throw Error("invalid IRI: <" + v + ">");
    return Iri{std::move(v)};
  }
};

/// RDF literal. A language tag and a datatype are mutually exclusive; the
/// language tag is stored lowercase.
struct Literal {
  std::string lexical;
  std::string lang;                 // empty when absent
  std::optional<Iri> datatype;      // absent for plain and lang-tagged literals

  auto operator<=>(const Literal&) const = default;

  static Literal plain(std::string lex) { return {std::move(lex), {}, {}}; }
  static Literal tagged(std::string lex, std::string_view language) {
    return {std::move(lex), text::to_lower_ascii(language), {}};
  }
  static Literal typed(std::string lex, Iri dt) {
    return {std::move(lex), {}, std::move(dt)};
  }
};

struct BlankNode {
  std::string label;

  auto operator<=>(const BlankNode&) const = default;

  static bool valid_label(std::string_view l) {
    if (l.empty()) return false;
    for (char c : l) {
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                (c >= '0' && c <= '9') || c == '_';
      if (!ok) return false;
    }
    return true;
  }
};

/// One RDF term. The variant order (Iri, BlankNode, Literal) fixes the
/// deterministic term ordering used by graph indexes and serializers.
using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const Literal& as_literal(const Term& t) { return std::get<Literal>(t); }

inline bool valid_subject(const Term& t) { return !is_literal(t); }
inline bool valid_predicate(const Term& t) { return is_iri(t); }

/// Escapes a literal body: \" \\ \n \r \t; other bytes pass through as
/// raw UTF-8.
inline std::string escape_literal(std::string_view lex) {
  std::string out;
  out.reserve(lex.size());
  for (char c : lex) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

/// Canonical N-Triples rendering of a single term. Also used as the
/// deterministic sort key for query results.
inline std::string to_ntriples(const Term& t) {
  if (is_iri(t)) return "<" + as_iri(t).value + ">";
  if (is_blank(t)) return "_:" + std::get<BlankNode>(t).label;
  const Literal& l = as_literal(t);
  std::string out = "\"" + escape_literal(l.lexical) + "\"";
  if (!l.lang.empty()) {
    out += "@" + l.lang;
  } else if (l.datatype) {
    out += "^^<" + l.datatype->value + ">";
  }
  return out;
}

}  // namespace translod
