#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logichart/address.hpp"
#include "logichart/errors.hpp"
#include "logichart/program.hpp"
#include "logichart/term.hpp"
#include "logichart/unify.hpp"

namespace logichart {

enum class EventKind {
  Call,
  Exit,
  Fail,
  Redo,
  CutPrune,
  DbAssertA,
  DbAssertZ,
  DbRetract,
  Output,
  SolutionFound,
  PromptBacktrack,
  QueryDone,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view name);

inline bool is_port_event(EventKind k) {
  return k == EventKind::Call || k == EventKind::Exit || k == EventKind::Fail ||
         k == EventKind::Redo;
}
inline bool is_db_event(EventKind k) {
  return k == EventKind::DbAssertA || k == EventKind::DbAssertZ || k == EventKind::DbRetract;
}

struct VarBinding {
  std::string name;
  std::string value;

  bool operator==(const VarBinding&) const = default;
};

// One observation of the resolution machine.
struct TraceEvent {
  EventKind kind = EventKind::Call;
  // Diagram path of the goal; absent for Db*, Output and QueryDone.
  std::optional<NodeAddress> address;
  // Goal instance under the current bindings.
  std::string goal;
  // Named variables of the clause instance the goal belongs to.
  std::vector<VarBinding> bindings;
  std::optional<ClauseId> clause_id;
  std::string clause_text;
  std::vector<NodeAddress> pruned;
  bool success = false;
  // Output text for Output events.
  std::string text;
  // Error text (existence errors on Fail, runtime errors on QueryDone).
  std::string message;
};

enum class MachineStatus { Running, AwaitingBacktrackAnswer, Done };

enum class DbChange { AssertA, AssertZ, Retract };

// Name of the synthetic clause head that wraps the query.
inline constexpr std::string_view kQueryHead = "prolog_program";

// Appends `prolog_program :- G1, ..., Gn` to p and returns its id.
ClauseId add_query_clause(Program& p, const std::vector<Term>& query);

namespace detail {
struct Frame;
struct Activation;
}  // namespace detail

// Depth-first, leftmost resolution with cut, driven one TraceEvent at a time.
//
// Every goal is a box with Call/Exit/Fail/Redo ports. Backtracking re-enters
// exited goals right to left, so each goal address sees
// Call (Exit Redo)* (Exit | Fail) per invocation. A cut makes the enclosing
// clause's goal fail as soon as backtracking reaches the cut.
//
// Clause lookup takes a snapshot of live clauses at Call time, so clauses
// asserted during a call are only seen by later calls. Retracted clauses are
// skipped even if they were in the snapshot.
class Machine {
 public:
  Machine(Program program, std::vector<Term> query);
  Machine(Machine&&) noexcept;
  Machine& operator=(Machine&&) noexcept;
  ~Machine();

  TraceEvent step();
  // `more` resumes by backtracking into the last query goal; otherwise the
  // run ends and the returned QueryDone(success) is the final event.
  std::optional<TraceEvent> answer_backtrack(bool more);

  // Database side of asserta/assertz/retract. Retract binds the argument's
  // variables and returns nullopt if no live clause matches. Throws
  // EngineError for non-callable heads and static procedures.
  std::optional<ClauseId> db_change(DbChange kind, const Term& clause);

  MachineStatus status() const { return status_; }
  const Program& database() const { return db_; }
  ClauseId query_clause() const { return query_clause_; }
  NodeAddress query_address() const { return NodeAddress{}.child(Segment::alt(query_clause_)); }
  bool query_has_variables() const;
  std::size_t solutions() const { return solutions_; }
  const std::string& output() const { return output_; }
  const Substitution& bindings() const { return subst_; }
  std::size_t trail_size() const { return trail_.size(); }

 private:
  enum class Port {
    Call,
    Execute,
    Try,
    Exit,
    Fail,
    Redo,
    Solution,
    AfterSolution,
    QueryFailed,
    Abort,
    Idle,
  };

  struct BuiltinResult {
    bool success = false;
    std::optional<TraceEvent> event;
  };

  std::optional<TraceEvent> tick();
  detail::Frame* new_frame(detail::Activation* act, std::size_t pos);
  std::unique_ptr<detail::Activation> activate(detail::Frame* owner, const Clause& instance,
                                               const NodeAddress& address);
  TraceEvent goal_event(EventKind kind, const detail::Frame& f) const;
  std::vector<VarBinding> snapshot(const detail::Activation& act) const;
  BuiltinResult run_builtin(detail::Frame& f);
  BuiltinResult cut(detail::Frame& f);
  BuiltinResult assert_clause(DbChange kind, const Term& clause);
  BuiltinResult retract_clause(const Term& clause);
  void collect_untried(detail::Frame& f, std::vector<NodeAddress>& out);
  void collect_subtree(detail::Frame& f, std::vector<NodeAddress>& out);
  std::int64_t eval(const Term& t) const;
  std::string text_of(const Term& t, bool quoted) const;

  Program db_;
  ClauseId query_clause_{};
  VarCounter counter_;
  Substitution subst_;
  Trail trail_;
  std::unique_ptr<detail::Activation> root_;
  bool root_cut_ = false;
  Port port_ = Port::Call;
  detail::Frame* cursor_ = nullptr;
  MachineStatus status_ = MachineStatus::Running;
  std::string output_;
  std::size_t solutions_ = 0;
  std::string abort_message_;
};

}  // namespace logichart
