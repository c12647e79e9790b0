#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace logichart {

using VarId = std::int64_t;

enum class TermKind { Atom, Integer, Var, Compound };

// Immutable Prolog term. Copies share structure; a default-constructed Term
// is a null handle used only as a placeholder.
class Term {
 public:
  Term() = default;

  static Term atom(std::string name);
  static Term integer(std::int64_t value);
  static Term var(std::string name, VarId id);
  // An empty argument list yields an atom.
  static Term compound(std::string functor, std::vector<Term> args);
  static Term list(std::vector<Term> items, Term tail = Term::nil());
  static Term nil();

  bool is_null() const { return node_ == nullptr; }
  TermKind kind() const { return node_->kind; }
  bool is_atom() const { return kind() == TermKind::Atom; }
  bool is_integer() const { return kind() == TermKind::Integer; }
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_compound() const { return kind() == TermKind::Compound; }
  bool is_callable() const { return is_atom() || is_compound(); }
  bool is_nil() const { return is_atom() && name() == "[]"; }
  bool is_list_cell() const {
    return is_compound() && arity() == 2 && name() == ".";
  }
  bool is(std::string_view functor, std::size_t arity) const;

  // Atom name, compound functor or variable display name.
  const std::string& name() const { return node_->name; }
  std::int64_t value() const { return node_->value; }
  VarId var_id() const { return node_->value; }
  std::size_t arity() const { return node_->args.size(); }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::int64_t value = 0;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct PredicateKey {
  std::string name;
  std::size_t arity = 0;

  auto operator<=>(const PredicateKey&) const = default;
  std::string to_string() const;
};

// Functor/arity of a callable term; nullopt for variables and integers.
std::optional<PredicateKey> predicate_key(const Term& t);

// Structural identity; variables compare by id.
bool identical(const Term& a, const Term& b);

// Identical up to a consistent bijective renaming of variables.
bool alpha_equivalent(const Term& a, const Term& b);

// Largest variable id occurring in t, or 0.
VarId max_var_id(const Term& t);

// Distinct variables in order of first occurrence.
std::vector<Term> term_variables(const Term& t);

// Splits a ','/2 chain into its conjuncts; `true` yields an empty list.
std::vector<Term> conjuncts(const Term& body);
// Like conjuncts, but an explicit `true` stays a goal.
std::vector<Term> flatten_conjunction(const Term& body);
Term make_conjunction(std::span<const Term> goals);

}  // namespace logichart
