#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "logichart/program.hpp"
#include "logichart/term.hpp"

namespace logichart {

// Variable bindings. Lookups dereference through chains, so applying the
// substitution is idempotent. A variable is never bound to itself.
class Substitution {
 public:
  // Follows variable bindings until an unbound variable or a non-variable.
  Term walk(const Term& t) const;
  // Applies the substitution all the way down.
  Term resolve(const Term& t) const;

  bool is_bound(VarId id) const { return bindings_.contains(id); }
  std::optional<Term> lookup(VarId id) const;
  std::size_t size() const { return bindings_.size(); }

  void bind(VarId id, Term value);
  void unbind(VarId id) { bindings_.erase(id); }

  bool operator==(const Substitution& other) const;

 private:
  std::unordered_map<VarId, Term> bindings_;
};

// Records bindings made since a mark so they can be undone.
class Trail {
 public:
  std::size_t mark() const { return entries_.size(); }
  void push(VarId id) { entries_.push_back(id); }
  void undo_to(std::size_t mark, Substitution& s);
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<VarId> entries_;
};

// Unifies with occurs check, extending s in place. On failure every binding
// made by this call is undone and false is returned.
bool unify(const Term& a, const Term& b, Substitution& s, Trail& trail);

// Most general extension of s unifying a and b, or nullopt.
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s = {});

// True if a and b have a unifier. Does not modify anything.
bool unifiable(const Term& a, const Term& b);

// Source of fresh variable ids.
class VarCounter {
 public:
  explicit VarCounter(VarId next = 1) : next_(next) {}
  VarId fresh() { return next_++; }
  VarId peek() const { return next_; }

 private:
  VarId next_;
};

// Copies t with every variable replaced by a fresh one carrying the same
// display name. Shared occurrences stay shared.
Term rename_term(const Term& t, VarCounter& counter);

// Renames all variables of a clause consistently.
Clause rename_apart(const Clause& c, VarCounter& counter);

}  // namespace logichart
