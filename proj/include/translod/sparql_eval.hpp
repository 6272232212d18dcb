#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "translod/graph.hpp"
#include "translod/sparql.hpp"

namespace translod::sparql {

using Solution = std::map<Variable, Term>;

namespace detail {

inline std::optional<Term> resolve(const PatternTerm& pt, const Solution& sol) {
  if (const Term* t = std::get_if<Term>(&pt)) return *t;
  auto it = sol.find(std::get<Variable>(pt));
  if (it == sol.end()) return std::nullopt;
  return it->second;
}

/// Extends sol so that p matches t, or returns false on a binding conflict.
inline bool unify(const TriplePattern& p, const Triple& t, Solution& sol) {
  auto one = [&](const PatternTerm& pt, const Term& value) {
    if (const Term* c = std::get_if<Term>(&pt)) return *c == value;
    auto [it, inserted] = sol.emplace(std::get<Variable>(pt), value);
    return inserted || it->second == value;
  };
  return one(p.subject, t.subject) && one(p.predicate, t.predicate) &&
         one(p.object, t.object);
}

inline void eval_rec(const Graph& g, std::vector<TriplePattern> remaining,
                     const Solution& sol, std::vector<Solution>& out) {
  if (remaining.empty()) {
    out.push_back(sol);
    return;
  }
  // Expand the cheapest pattern first; result set is order-independent.
  std::size_t best = 0;
  std::size_t best_count = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    const TriplePattern& p = remaining[i];
    std::size_t c = g.count_match(resolve(p.subject, sol),
                                  resolve(p.predicate, sol),
                                  resolve(p.object, sol));
    if (c < best_count) {
      best_count = c;
      best = i;
    }
  }
  TriplePattern p = remaining[best];
  remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  for (const Triple& t : g.match(resolve(p.subject, sol),
                                 resolve(p.predicate, sol),
                                 resolve(p.object, sol))) {
    Solution extended = sol;
    if (unify(p, t, extended)) eval_rec(g, remaining, extended, out);
  }
}

}  // namespace detail

/// All variable assignments under which every pattern is a triple of g.
inline std::vector<Solution> eval_bgp(const Graph& g,
                                      const std::vector<TriplePattern>& patterns) {
  std::vector<Solution> out;
  detail::eval_rec(g, patterns, Solution{}, out);
  return out;
}

/// BGP solutions that additionally satisfy every equality filter. Filter
/// comparison is exact: lexical form, language tag and datatype all count,
/// so a typed literal never equals a plain one.
inline std::vector<Solution> matching_solutions(const Graph& g, const Query& q) {
  std::vector<Solution> sols = eval_bgp(g, q.where);
  if (q.filters.empty()) return sols;
  std::vector<Solution> kept;
  for (Solution& s : sols) {
    bool ok = true;
    for (const Filter& f : q.filters) {
      const Term& bound = s.at(f.var);
      const Literal* lit = std::get_if<Literal>(&bound);
      if (!lit || !(*lit == f.value)) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(std::move(s));
  }
  return kept;
}

/// Projected, optionally deduplicated rows, sorted by serialized form.
inline std::vector<std::vector<Term>> eval_select(const Graph& g, const Query& q) {
  const SelectForm& sel = q.select();
  std::vector<std::vector<Term>> rows;
  for (const Solution& s : matching_solutions(g, q)) {
    std::vector<Term> row;
    row.reserve(sel.projection.size());
    for (const Variable& v : sel.projection) row.push_back(s.at(v));
    rows.push_back(std::move(row));
  }
  auto serial_less = [](const std::vector<Term>& a, const std::vector<Term>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      std::string sa = to_ntriples(a[i]);
      std::string sb = to_ntriples(b[i]);
      if (sa != sb) return sa < sb;
    }
    return a.size() < b.size();
  };
  std::sort(rows.begin(), rows.end(), serial_less);
  if (sel.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

/// Instantiates the template once per solution; instantiations that would
/// put a literal in subject position (or a non-IRI predicate) are skipped.
inline Graph eval_construct(const Graph& g, const Query& q) {
  const ConstructForm& con = q.construct();
  Graph out;
  for (const Solution& s : matching_solutions(g, q)) {
    for (const TriplePattern& p : con.tmpl) {
      Term subj = *detail::resolve(p.subject, s);
      Term pred = *detail::resolve(p.predicate, s);
      Term obj = *detail::resolve(p.object, s);
      if (!valid_subject(subj) || !valid_predicate(pred)) continue;
      out.insert(std::move(subj), std::move(pred), std::move(obj));
    }
  }
  return out;
}

}  // namespace translod::sparql
