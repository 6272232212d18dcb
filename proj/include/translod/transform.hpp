#pragma once

// Rule files for the two-phase pipeline. A rule file is line-oriented:
//   - '#' starts a comment;
//   - PREFIX declarations bind for both directives and queries;
//   - lines starting with split / drop / date / mint / slug are directives,
//     applied to the working graph in file order before any query runs;
//   - everything else is a stream of CONSTRUCT queries in the SPARQL subset,
//     whose outputs are unioned into the result.
//
// Directives exist because the query subset deliberately has no string
// functions: cell splitting, IRI minting, slugging and date re-rendering
// happen here, and the queries stay pure pattern rewrites.
//
//   split <pred>                   explode "a, b" literals into one triple each
//   drop  <pred> "value"           delete triples with that exact plain object
//   date  <pred>                   rewrite dd/mm/yyyy objects to xsd:date
//   mint  <newPred> "from" "to"    link each subject whose IRI contains "from"
//                                  to the IRI with "from" replaced by "to"
//   slug  <newPred> <srcPred> "path"  link subject to <base + path + slug(obj)>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "translod/error.hpp"
#include "translod/graph.hpp"
#include "translod/namespaces.hpp"
#include "translod/passim.hpp"
#include "translod/sparql.hpp"
#include "translod/sparql_eval.hpp"
#include "translod/text.hpp"

namespace translod::transform {

struct Directive {
  enum class Kind { Split, Drop, Date, Mint, Slug };
  Kind kind;
  Iri pred;         // split/drop/date: target; mint/slug: predicate to add
  Iri src;          // slug only: predicate whose objects get slugged
  std::string arg1; // drop: value; mint: from; slug: path
  std::string arg2; // mint: to
};

struct RuleSet {
  std::vector<Directive> directives;
  std::vector<sparql::Query> queries;
};

namespace detail {

inline std::vector<std::string> directive_tokens(std::string_view line,
                                                 std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '"') {
      std::size_t close = line.find('"', i + 1);
      if (close == std::string_view::npos)
        throw SyntaxError(line_no, "unterminated quoted value");
      out.push_back('"' + std::string(line.substr(i + 1, close - i - 1)));
      i = close + 1;
    } else {
      // Tokens end at whitespace only, so fragment IRIs like <ns#local>
      // survive; '#' starts a comment only at a token boundary.
      std::size_t end = i;
      while (end < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[end])))
        ++end;
      out.emplace_back(line.substr(i, end - i));
      i = end;
    }
  }
  return out;
}

inline Iri directive_iri(const std::string& token, const NamespaceMap& prefixes,
                         std::size_t line_no) {
  if (token.size() >= 2 && token.front() == '<' && token.back() == '>') {
    std::string iri = token.substr(1, token.size() - 2);
    if (!Iri::is_valid(iri))
      throw SyntaxError(line_no, "invalid IRI " + token);
    return Iri{iri};
  }
  try {
    return expand_qname(token, prefixes);
  } catch (const Error& e) {
    throw SyntaxError(line_no, e.what());
  }
}

inline std::string quoted_arg(const std::vector<std::string>& tokens,
                              std::size_t index, std::size_t line_no,
                              std::string_view what) {
  if (index >= tokens.size() || tokens[index].empty() ||
      tokens[index][0] != '"')
    throw SyntaxError(line_no, "expected quoted " + std::string(what));
  return tokens[index].substr(1);
}

inline Directive parse_directive(const std::vector<std::string>& tokens,
                                 const NamespaceMap& prefixes,
                                 std::size_t line_no) {
  const std::string& kw = tokens[0];
  auto iri_arg = [&](std::size_t index) {
    if (index >= tokens.size() || tokens[index].empty() ||
        tokens[index][0] == '"')
      throw SyntaxError(line_no, kw + ": expected predicate");
    return directive_iri(tokens[index], prefixes, line_no);
  };
  auto arity = [&](std::size_t n) {
    if (tokens.size() != n)
      throw SyntaxError(line_no, kw + ": expected " + std::to_string(n - 1) +
                                     " arguments, got " +
                                     std::to_string(tokens.size() - 1));
  };
  if (kw == "split") {
    arity(2);
    return {Directive::Kind::Split, iri_arg(1), Iri{}, "", ""};
  }
  if (kw == "drop") {
    arity(3);
    return {Directive::Kind::Drop, iri_arg(1), Iri{},
            quoted_arg(tokens, 2, line_no, "value"), ""};
  }
  if (kw == "date") {
    arity(2);
    return {Directive::Kind::Date, iri_arg(1), Iri{}, "", ""};
  }
  if (kw == "mint") {
    arity(4);
    return {Directive::Kind::Mint, iri_arg(1), Iri{},
            quoted_arg(tokens, 2, line_no, "search fragment"),
            quoted_arg(tokens, 3, line_no, "replacement fragment")};
  }
  if (kw == "slug") {
    arity(4);
    return {Directive::Kind::Slug, iri_arg(1), iri_arg(2),
            quoted_arg(tokens, 3, line_no, "path"), ""};
  }
  throw SyntaxError(line_no, "unknown directive " + kw);
}

inline Graph apply_directive(const Graph& g, const Directive& d, const Iri& base) {
  Graph out;
  switch (d.kind) {
    case Directive::Kind::Split:
      for (const Triple& t : g.triples()) {
        const Literal* lit = std::get_if<Literal>(&t.object);
        if (Term{d.pred} == t.predicate && lit && lit->lang.empty() &&
            !lit->datatype) {
          for (const std::string& part : passim::split_multivalue(lit->lexical))
            out.insert(t.subject, t.predicate, Literal::plain(part));
        } else {
          out.insert(t);
        }
      }
      return out;
    case Directive::Kind::Drop:
      for (const Triple& t : g.triples())
        if (!(Term{d.pred} == t.predicate &&
              Term{Literal::plain(d.arg1)} == t.object))
          out.insert(t);
      return out;
    case Directive::Kind::Date:
      for (const Triple& t : g.triples()) {
        const Literal* lit = std::get_if<Literal>(&t.object);
        if (Term{d.pred} == t.predicate && lit && lit->lang.empty() &&
            !lit->datatype) {
          auto ymd = passim::parse_fr_date(lit->lexical);
          out.insert(t.subject, t.predicate,
                     Literal::typed(passim::to_iso_date(ymd), xsd_type("date")));
        } else {
          out.insert(t);
        }
      }
      return out;
    case Directive::Kind::Mint: {
      out = g;
      for (const Term& s : g.subjects()) {
        const Iri* iri = std::get_if<Iri>(&s);
        if (!iri) continue;
        std::size_t at = iri->value.find(d.arg1);
        if (at == std::string::npos) continue;
        std::string minted = iri->value;
        minted.replace(at, d.arg1.size(), d.arg2);
        out.insert(s, Term{d.pred}, Term{Iri{minted}});
      }
      return out;
    }
    case Directive::Kind::Slug: {
      out = g;
      for (const Triple& t : g.match(std::nullopt, Term{d.src}, std::nullopt)) {
        const Literal* lit = std::get_if<Literal>(&t.object);
        if (!lit) continue;
        std::string s = text::slug(lit->lexical);
        if (s.empty()) continue;
        out.insert(t.subject, Term{d.pred}, Term{Iri{base.value + d.arg1 + s}});
      }
      return out;
    }
  }
  return out;
}

}  // namespace detail

inline RuleSet parse_rules(std::string_view text) {
  std::size_t bad = 0;
  if (!text::utf8_valid(text, &bad))
    throw Error("rule file: invalid UTF-8 at byte " + std::to_string(bad));

  struct PendingDirective {
    std::vector<std::string> tokens;
    std::size_t line_no;
  };
  std::vector<PendingDirective> pending;
  std::string query_text;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end == text.size() ? text.size() + 1 : end + 1;

    std::string head = text::trim(line);
    std::size_t sp = head.find_first_of(" \t");
    std::string first = head.substr(0, sp);
    if (first == "split" || first == "drop" || first == "date" ||
        first == "mint" || first == "slug") {
      pending.push_back({detail::directive_tokens(line, line_no), line_no});
      query_text += '\n';  // keep query-side line count aligned
    } else {
      query_text.append(line);
      query_text += '\n';
    }
  }

  RuleSet rules;
  sparql::detail::Parser parser(query_text);
  while (true) {
    parser.parse_prologue();
    if (parser.at_end()) break;
    sparql::Query q = parser.parse_one();
    if (q.is_select())
      throw Error("rule file: only CONSTRUCT queries are allowed");
    rules.queries.push_back(std::move(q));
  }
  for (const PendingDirective& p : pending)
    rules.directives.push_back(
        detail::parse_directive(p.tokens, parser.prefixes(), p.line_no));
  return rules;
}

inline Graph apply_directives(const Graph& g,
                              const std::vector<Directive>& directives,
                              const Iri& base) {
  Graph out = g;
  for (const Directive& d : directives)
    out = detail::apply_directive(out, d, base);
  return out;
}

/// Runs the whole rule file: directives first, then every CONSTRUCT query
/// over the prepared graph, all outputs unioned.
inline Graph apply_rules(const Graph& raw, const RuleSet& rules, const Iri& base) {
  Graph prepared = apply_directives(raw, rules.directives, base);
  Graph out;
  for (const sparql::Query& q : rules.queries)
    out.merge(sparql::eval_construct(prepared, q));
  return out;
}

}  // namespace translod::transform
