#include "logichart/term.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace logichart {

Term Term::atom(std::string name) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Atom, std::move(name), 0, {}}));
}

Term Term::integer(std::int64_t value) {
  return Term(std::make_shared<const Node>(Node{TermKind::Integer, {}, value, {}}));
}

Term Term::var(std::string name, VarId id) {
  return Term(
      std::make_shared<const Node>(Node{TermKind::Var, std::move(name), id, {}}));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return atom(std::move(functor));
  return Term(std::make_shared<const Node>(
      Node{TermKind::Compound, std::move(functor), 0, std::move(args)}));
}

Term Term::nil() {
  static const Term kNil = atom("[]");
  return kNil;
}

Term Term::list(std::vector<Term> items, Term tail) {
  Term result = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    result = compound(".", {*it, result});
  }
  return result;
}

bool Term::is(std::string_view functor, std::size_t n) const {
  if (n == 0) return is_atom() && name() == functor;
  return is_compound() && arity() == n && name() == functor;
}

std::string PredicateKey::to_string() const {
  return name + "/" + std::to_string(arity);
}

std::optional<PredicateKey> predicate_key(const Term& t) {
  if (t.is_atom()) return PredicateKey{t.name(), 0};
  if (t.is_compound()) return PredicateKey{t.name(), t.arity()};
  return std::nullopt;
}

bool identical(const Term& a, const Term& b) {
  std::vector<std::pair<const Term*, const Term*>> work{{&a, &b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case TermKind::Atom:
        if (x->name() != y->name()) return false;
        break;
      case TermKind::Integer:
        if (x->value() != y->value()) return false;
        break;
      case TermKind::Var:
        if (x->var_id() != y->var_id()) return false;
        break;
      case TermKind::Compound:
        if (x->name() != y->name() || x->arity() != y->arity()) return false;
        for (std::size_t i = 0; i < x->arity(); ++i) {
          work.emplace_back(&x->arg(i), &y->arg(i));
        }
        break;
    }
  }
  return true;
}

bool alpha_equivalent(const Term& a, const Term& b) {
  std::unordered_map<VarId, VarId> forward;
  std::unordered_map<VarId, VarId> backward;
  std::vector<std::pair<const Term*, const Term*>> work{{&a, &b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case TermKind::Atom:
        if (x->name() != y->name()) return false;
        break;
      case TermKind::Integer:
        if (x->value() != y->value()) return false;
        break;
      case TermKind::Var: {
        auto [f, fresh_f] = forward.emplace(x->var_id(), y->var_id());
        auto [r, fresh_r] = backward.emplace(y->var_id(), x->var_id());
        if (f->second != y->var_id() || r->second != x->var_id()) return false;
        break;
      }
      case TermKind::Compound:
        if (x->name() != y->name() || x->arity() != y->arity()) return false;
        for (std::size_t i = 0; i < x->arity(); ++i) {
          work.emplace_back(&x->arg(i), &y->arg(i));
        }
        break;
    }
  }
  return true;
}

VarId max_var_id(const Term& t) {
  VarId best = 0;
  std::vector<const Term*> work{&t};
  while (!work.empty()) {
    const Term* x = work.back();
    work.pop_back();
    if (x->is_var()) {
      best = std::max(best, x->var_id());
    } else if (x->is_compound()) {
      for (const Term& arg : x->args()) work.push_back(&arg);
    }
  }
  return best;
}

std::vector<Term> term_variables(const Term& t) {
  std::vector<Term> out;
  std::unordered_set<VarId> seen;
  std::vector<const Term*> work{&t};
  while (!work.empty()) {
    const Term* x = work.back();
    work.pop_back();
    if (x->is_var()) {
      if (seen.insert(x->var_id()).second) out.push_back(*x);
    } else if (x->is_compound()) {
      for (auto it = x->args().rbegin(); it != x->args().rend(); ++it) {
        work.push_back(&*it);
      }
    }
  }
  return out;
}

std::vector<Term> conjuncts(const Term& body) {
  if (body.is("true", 0)) return {};
  return flatten_conjunction(body);
}

std::vector<Term> flatten_conjunction(const Term& body) {
  std::vector<Term> goals;
  std::vector<Term> work{body};
  while (!work.empty()) {
    Term cur = std::move(work.back());
    work.pop_back();
    if (cur.is(",", 2)) {
      work.push_back(cur.arg(1));
      work.push_back(cur.arg(0));
    } else {
      goals.push_back(std::move(cur));
    }
  }
  return goals;
}

Term make_conjunction(std::span<const Term> goals) {
  if (goals.empty()) return Term::atom("true");
  Term result = goals.back();
  for (std::size_t i = goals.size() - 1; i-- > 0;) {
    result = Term::compound(",", {goals[i], result});
  }
  return result;
}

}  // namespace logichart
