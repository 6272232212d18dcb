#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "translod/error.hpp"
#include "translod/term.hpp"

namespace translod {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

/// In-memory triple set with SPO, POS and OSP indexes. Insertion keeps all
/// three indexes coherent; match() dispatches to the narrowest one. A graph
/// is safe for concurrent reads once no writer mutates it any more.
class Graph {
 public:
  using Index = std::map<Term, std::map<Term, std::set<Term>>>;

  /// Inserts a triple. Returns false when it was already present.
  /// Throws InvalidPositionError when a literal sits in subject or
  /// predicate position, or the predicate is a blank node.
  bool insert(Triple t) {
    if (!valid_subject(t.subject))
      throw InvalidPositionError("literal in subject position");
    if (!valid_predicate(t.predicate))
      throw InvalidPositionError(is_literal(t.predicate)
                                     ? "literal in predicate position"
                                     : "blank node in predicate position");
    bool added = spo_[t.subject][t.predicate].insert(t.object).second;
    if (added) {
      pos_[t.predicate][t.object].insert(t.subject);
      osp_[t.object][t.subject].insert(t.predicate);
      ++size_;
    }
    return added;
  }

  bool insert(Term s, Term p, Term o) {
    return insert(Triple{std::move(s), std::move(p), std::move(o)});
  }

  void merge(const Graph& other) {
    for (const Triple& t : other.triples()) insert(t);
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(const Triple& t) const {
    auto s = spo_.find(t.subject);
    if (s == spo_.end()) return false;
    auto p = s->second.find(t.predicate);
    if (p == s->second.end()) return false;
    return p->second.count(t.object) > 0;
  }

  /// All triples in SPO index order.
  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    out.reserve(size_);
    for (const auto& [s, pm] : spo_)
      for (const auto& [p, os] : pm)
        for (const Term& o : os) out.push_back({s, p, o});
    return out;
  }

  /// Triples matching every bound position; unbound positions match
  /// anything. Result order is the order of the index that serves the
  /// lookup, so it is deterministic for a given graph.
  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o) const {
    std::vector<Triple> out;
    if (s && p && o) {
      Triple t{*s, *p, *o};
      if (contains(t)) out.push_back(std::move(t));
    } else if (s && p) {
      if (auto* objs = find2(spo_, *s, *p))
        for (const Term& obj : *objs) out.push_back({*s, *p, obj});
    } else if (s && o) {
      if (auto* preds = find2(osp_, *o, *s))
        for (const Term& pred : *preds) out.push_back({*s, pred, *o});
    } else if (p && o) {
      if (auto* subs = find2(pos_, *p, *o))
        for (const Term& sub : *subs) out.push_back({sub, *p, *o});
    } else if (s) {
      if (auto it = spo_.find(*s); it != spo_.end())
        for (const auto& [pred, objs] : it->second)
          for (const Term& obj : objs) out.push_back({*s, pred, obj});
    } else if (p) {
      if (auto it = pos_.find(*p); it != pos_.end())
        for (const auto& [obj, subs] : it->second)
          for (const Term& sub : subs) out.push_back({sub, *p, obj});
    } else if (o) {
      if (auto it = osp_.find(*o); it != osp_.end())
        for (const auto& [sub, preds] : it->second)
          for (const Term& pred : preds) out.push_back({sub, pred, *o});
    } else {
      return triples();
    }
    return out;
  }

  std::size_t count_match(const std::optional<Term>& s,
                          const std::optional<Term>& p,
                          const std::optional<Term>& o) const {
    return match(s, p, o).size();
  }

  /// Distinct subjects in index order.
  std::vector<Term> subjects() const {
    std::vector<Term> out;
    out.reserve(spo_.size());
    for (const auto& [s, pm] : spo_) out.push_back(s);
    return out;
  }

  bool operator==(const Graph& g) const { return spo_ == g.spo_; }

  const Index& spo() const { return spo_; }
  const Index& pos() const { return pos_; }
  const Index& osp() const { return osp_; }

 private:
  static const std::set<Term>* find2(const Index& idx, const Term& a, const Term& b) {
    auto i = idx.find(a);
    if (i == idx.end()) return nullptr;
    auto j = i->second.find(b);
    if (j == i->second.end()) return nullptr;
    return &j->second;
  }

  Index spo_, pos_, osp_;
  std::size_t size_ = 0;
};

}  // namespace translod
