#include "logichart/program.hpp"

#include <algorithm>
#include <stdexcept>

namespace logichart {

Term Clause::as_term() const {
  if (body.empty()) return head;
  return Term::compound(":-", {head, make_conjunction(body)});
}

ClauseId Program::add(Term head, std::vector<Term> body, InsertAt where) {
  auto key = predicate_key(head);
  if (!key) throw std::invalid_argument("clause head must be callable");
  ClauseId id = next_id();
  clauses_.push_back(Clause{id, std::move(head), std::move(body), false});
  auto& ids = index_[*key];
  if (where == InsertAt::Front) {
    ids.insert(ids.begin(), id);
  } else {
    ids.push_back(id);
  }
  return id;
}

void Program::retract(ClauseId id) {
  clauses_.at(to_index(id) - 1).retracted = true;
}

const Clause& Program::clause(ClauseId id) const {
  return clauses_.at(to_index(id) - 1);
}

std::span<const ClauseId> Program::predicate(const PredicateKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return {};
  return it->second;
}

std::vector<ClauseId> Program::live_clauses(const PredicateKey& key) const {
  std::vector<ClauseId> out;
  for (ClauseId id : predicate(key)) {
    if (!clause(id).retracted) out.push_back(id);
  }
  return out;
}

VarId Program::max_var_id() const {
  VarId best = 0;
  for (const Clause& c : clauses_) {
    best = std::max(best, logichart::max_var_id(c.as_term()));
  }
  return best;
}

}  // namespace logichart
