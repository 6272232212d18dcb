#pragma once

#include <map>
#include <set>
#include <string>

#include "translod/graph.hpp"
#include "translod/namespaces.hpp"
#include "translod/ntriples.hpp"

namespace translod {

namespace detail {

class TurtleWriter {
 public:
  TurtleWriter(const Graph& g, const NamespaceMap& nsmap) : g_(g), ns_(nsmap) {}

  std::string write() {
    std::string body = render_body();
    std::string out;
    for (const auto& [prefix, iri] : used_prefixes_)
      out += "@prefix " + prefix + ": <" + iri + "> .\n";
    if (!out.empty() && !body.empty()) out += "\n";
    out += body;
    return out;
  }

 private:
  std::string render_iri(const Iri& iri) {
    if (auto q = ns_.compact(iri)) {
      used_prefixes_[q->first] = ns_.lookup(q->first).value;
      return q->first + ":" + q->second;
    }
    return "<" + iri.value + ">";
  }

  std::string render_term(const Term& t) {
    if (is_iri(t)) return render_iri(as_iri(t));
    if (is_blank(t)) return "_:" + std::get<BlankNode>(t).label;
    const Literal& l = as_literal(t);
    std::string out = "\"" + escape_literal(l.lexical) + "\"";
    if (!l.lang.empty()) out += "@" + l.lang;
    else if (l.datatype) out += "^^" + render_iri(*l.datatype);
    return out;
  }

  std::string render_body() {
    std::string body;
    bool first_subject = true;
    for (const auto& [subj, pm] : g_.spo()) {
      if (!first_subject) body += "\n";
      first_subject = false;
      body += render_term(subj);
      bool first_pred = true;
      for (const auto& [pred, objs] : pm) {
        body += first_pred ? " " : " ;\n    ";
        first_pred = false;
        body += as_iri(pred).value == rdf_type().value ? "a" : render_iri(as_iri(pred));
        bool first_obj = true;
        for (const Term& obj : objs) {
          body += first_obj ? " " : ", ";
          first_obj = false;
          body += render_term(obj);
        }
      }
      body += " .\n";
    }
    return body;
  }

  const Graph& g_;
  const NamespaceMap& ns_;
  std::map<std::string, std::string> used_prefixes_;
};

}  // namespace detail

/// Turtle serialization: one @prefix line per namespace actually used,
/// triples grouped by subject with ';' / ',' continuation, rdf:type as 'a'.
/// Output for equal graphs is byte-identical (index order everywhere).
inline std::string serialize_turtle(const Graph& g, const NamespaceMap& nsmap) {
  return detail::TurtleWriter(g, nsmap).write();
}

}  // namespace translod
