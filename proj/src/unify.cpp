#include "logichart/unify.hpp"

#include <algorithm>
#include <unordered_map>

namespace logichart {

Term Substitution::walk(const Term& t) const {
  Term cur = t;
  while (cur.is_var()) {
    auto it = bindings_.find(cur.var_id());
    if (it == bindings_.end()) break;
    cur = it->second;
  }
  return cur;
}

Term Substitution::resolve(const Term& t) const {
  Term w = walk(t);
  if (!w.is_compound()) return w;
  std::vector<Term> args;
  args.reserve(w.arity());
  bool changed = false;
  for (const Term& a : w.args()) {
    args.push_back(resolve(a));
    changed = changed || !identical(args.back(), a);
  }
  if (!changed) return w;
  return Term::compound(w.name(), std::move(args));
}

std::optional<Term> Substitution::lookup(VarId id) const {
  auto it = bindings_.find(id);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

void Substitution::bind(VarId id, Term value) {
  bindings_.insert_or_assign(id, std::move(value));
}

bool Substitution::operator==(const Substitution& other) const {
  if (bindings_.size() != other.bindings_.size()) return false;
  for (const auto& [id, value] : bindings_) {
    auto it = other.bindings_.find(id);
    if (it == other.bindings_.end() || !identical(it->second, value)) return false;
  }
  return true;
}

void Trail::undo_to(std::size_t mark, Substitution& s) {
  while (entries_.size() > mark) {
    s.unbind(entries_.back());
    entries_.pop_back();
  }
}

namespace {

bool occurs(VarId id, const Term& t, const Substitution& s) {
  std::vector<Term> work{t};
  while (!work.empty()) {
    Term cur = s.walk(work.back());
    work.pop_back();
    if (cur.is_var()) {
      if (cur.var_id() == id) return true;
    } else if (cur.is_compound()) {
      for (const Term& a : cur.args()) work.push_back(a);
    }
  }
  return false;
}

}  // namespace

bool unify(const Term& a, const Term& b, Substitution& s, Trail& trail) {
  std::size_t mark = trail.mark();
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    Term x = s.walk(work.back().first);
    Term y = s.walk(work.back().second);
    work.pop_back();
    if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) continue;
    if (x.is_var() || y.is_var()) {
      const Term& var = x.is_var() ? x : y;
      const Term& value = x.is_var() ? y : x;
      if (occurs(var.var_id(), value, s)) {
        trail.undo_to(mark, s);
        return false;
      }
      s.bind(var.var_id(), value);
      trail.push(var.var_id());
      continue;
    }
    bool same = x.kind() == y.kind();
    if (same) {
      switch (x.kind()) {
        case TermKind::Atom:
          same = x.name() == y.name();
          break;
        case TermKind::Integer:
          same = x.value() == y.value();
          break;
        case TermKind::Compound:
          same = x.name() == y.name() && x.arity() == y.arity();
          if (same) {
            for (std::size_t i = x.arity(); i-- > 0;) work.emplace_back(x.arg(i), y.arg(i));
          }
          break;
        case TermKind::Var:
          break;
      }
    }
    if (!same) {
      trail.undo_to(mark, s);
      return false;
    }
  }
  return true;
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s) {
  Substitution out = s;
  Trail trail;
  if (!unify(a, b, out, trail)) return std::nullopt;
  return out;
}

bool unifiable(const Term& a, const Term& b) {
  Substitution s;
  Trail trail;
  return unify(a, b, s, trail);
}

namespace {

Term rename_with(const Term& t, std::unordered_map<VarId, Term>& map, VarCounter& counter) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = map.find(t.var_id());
      if (it != map.end()) return it->second;
      Term fresh = Term::var(t.name(), counter.fresh());
      map.emplace(t.var_id(), fresh);
      return fresh;
    }
    case TermKind::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(rename_with(a, map, counter));
      return Term::compound(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

}  // namespace

Term rename_term(const Term& t, VarCounter& counter) {
  std::unordered_map<VarId, Term> map;
  return rename_with(t, map, counter);
}

Clause rename_apart(const Clause& c, VarCounter& counter) {
  std::unordered_map<VarId, Term> map;
  Clause out{c.id, rename_with(c.head, map, counter), {}, c.retracted};
  out.body.reserve(c.body.size());
  for (const Term& g : c.body) out.body.push_back(rename_with(g, map, counter));
  return out;
}

}  // namespace logichart
