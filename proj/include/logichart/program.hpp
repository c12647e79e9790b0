#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "logichart/term.hpp"

namespace logichart {

// Clause identity. Ids start at 1 and grow in source/assertion order.
enum class ClauseId : std::uint32_t {};

constexpr std::uint32_t to_index(ClauseId id) {
  return static_cast<std::uint32_t>(id);
}

struct Clause {
  ClauseId id{};
  Term head;
  std::vector<Term> body;
  bool retracted = false;

  bool is_fact() const { return body.empty(); }
  PredicateKey key() const { return *predicate_key(head); }
  // `head :- b1, ..., bn`, or just `head` for facts.
  Term as_term() const;
};

enum class InsertAt { Front, Back };

// Ordered clause store with a per-predicate index. Retracted clauses stay in
// both the store and the index; only their flag changes.
class Program {
 public:
  ClauseId add(Term head, std::vector<Term> body, InsertAt where = InsertAt::Back);
  void retract(ClauseId id);

  const Clause& clause(ClauseId id) const;
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  ClauseId next_id() const { return ClauseId{static_cast<std::uint32_t>(clauses_.size() + 1)}; }

  bool defines(const PredicateKey& key) const { return index_.contains(key); }
  // Index order, retracted clauses included.
  std::span<const ClauseId> predicate(const PredicateKey& key) const;
  std::vector<ClauseId> live_clauses(const PredicateKey& key) const;
  const std::map<PredicateKey, std::vector<ClauseId>>& index() const { return index_; }

  VarId max_var_id() const;

 private:
  std::vector<Clause> clauses_;
  std::map<PredicateKey, std::vector<ClauseId>> index_;
};

}  // namespace logichart
