#include "logichart/machine.hpp"

#include <array>
#include <utility>

#include "logichart/builtins.hpp"
#include "logichart/writer.hpp"

namespace logichart {

namespace detail {

struct Frame {
  NodeAddress address;
  Term goal;
  // goal as bound when it was called
  Term called;
  Activation* parent = nullptr;
  std::size_t position = 0;
  std::size_t trail_mark = 0;
  bool builtin = false;
  std::vector<ClauseId> candidates;
  std::size_t next = 0;
  // Remaining alternatives were discarded by a cut.
  bool cut = false;
  // This frame is a `!` that has already run.
  bool cut_executed = false;
  std::unique_ptr<Activation> active;
  std::string message;
};

// A clause instance being executed on behalf of its owner goal.
struct Activation {
  ClauseId clause{};
  NodeAddress address;
  std::vector<Term> body;
  std::vector<Term> variables;
  std::vector<std::unique_ptr<Frame>> goals;
  Frame* owner = nullptr;
};

}  // namespace detail

using detail::Activation;
using detail::Frame;

namespace {

constexpr std::array<std::string_view, 12> kEventNames{
    "Call",      "Exit",      "Fail",   "Redo",          "CutPrune",        "DbAssertA",
    "DbAssertZ", "DbRetract", "Output", "SolutionFound", "PromptBacktrack", "QueryDone",
};

std::vector<Term> named_variables(const Clause& c) {
  std::vector<Term> out;
  for (const Term& v : term_variables(c.as_term())) {
    if (v.name() != "_") out.push_back(v);
  }
  return out;
}

std::string error_text(const std::string& error, const Term& goal) {
  auto key = predicate_key(goal);
  return error + " in " + (key ? key->to_string() : std::string("?"));
}

}  // namespace

std::string_view to_string(EventKind kind) {
  return kEventNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == name) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

ClauseId add_query_clause(Program& p, const std::vector<Term>& query) {
  return p.add(Term::atom(std::string(kQueryHead)), query);
}

Machine::Machine(Program program, std::vector<Term> query) : db_(std::move(program)) {
  if (query.empty()) throw PreconditionError("create_machine: query must not be empty");
  query_clause_ = add_query_clause(db_, query);
  counter_ = VarCounter(db_.max_var_id() + 1);
  Clause instance = rename_apart(db_.clause(query_clause_), counter_);
  root_ = activate(nullptr, instance, query_address());
  cursor_ = new_frame(root_.get(), 0);
  port_ = Port::Call;
}

Machine::Machine(Machine&&) noexcept = default;
Machine& Machine::operator=(Machine&&) noexcept = default;
Machine::~Machine() = default;

bool Machine::query_has_variables() const { return !root_->variables.empty(); }

std::unique_ptr<Activation> Machine::activate(Frame* owner, const Clause& instance,
                                              const NodeAddress& address) {
  auto act = std::make_unique<Activation>();
  act->clause = instance.id;
  act->address = address;
  act->body = instance.body;
  act->variables = named_variables(instance);
  act->owner = owner;
  return act;
}

Frame* Machine::new_frame(Activation* act, std::size_t pos) {
  auto f = std::make_unique<Frame>();
  f->address = act->address.child(Segment::body(static_cast<std::uint32_t>(pos)));
  f->goal = act->body[pos];
  f->parent = act;
  f->position = pos;
  act->goals.resize(pos);
  act->goals.push_back(std::move(f));
  return act->goals.back().get();
}

std::string Machine::text_of(const Term& t, bool quoted) const {
  return format_term(subst_.resolve(t), FormatOptions{quoted, false});
}

std::vector<VarBinding> Machine::snapshot(const Activation& act) const {
  std::vector<VarBinding> out;
  out.reserve(act.variables.size());
  for (const Term& v : act.variables) out.push_back({v.name(), text_of(v, true)});
  return out;
}

TraceEvent Machine::goal_event(EventKind kind, const Frame& f) const {
  TraceEvent ev;
  ev.kind = kind;
  ev.address = f.address;
  ev.goal = text_of(f.goal, true);
  ev.bindings = snapshot(*f.parent);
  return ev;
}

TraceEvent Machine::step() {
  if (status_ != MachineStatus::Running) {
    throw PreconditionError("step: machine is not running");
  }
  for (;;) {
    if (auto ev = tick()) return std::move(*ev);
  }
}

std::optional<TraceEvent> Machine::answer_backtrack(bool more) {
  if (status_ != MachineStatus::AwaitingBacktrackAnswer) {
    throw PreconditionError("answer_backtrack: machine is not awaiting an answer");
  }
  if (more) {
    status_ = MachineStatus::Running;
    cursor_ = root_->goals.back().get();
    port_ = Port::Redo;
    return std::nullopt;
  }
  status_ = MachineStatus::Done;
  port_ = Port::Idle;
  TraceEvent ev;
  ev.kind = EventKind::QueryDone;
  ev.success = true;
  return ev;
}

std::optional<TraceEvent> Machine::tick() {
  switch (port_) {
    case Port::Call: {
      Frame& f = *cursor_;
      f.trail_mark = trail_.mark();
      f.called = subst_.resolve(f.goal);
      TraceEvent ev = goal_event(EventKind::Call, f);
      Term goal = subst_.walk(f.goal);
      auto key = predicate_key(goal);
      if (!key) {
        abort_message_ = error_text(goal.is_var() ? "instantiation_error" : "type_error(callable)", goal);
        port_ = Port::Abort;
        return ev;
      }
      f.builtin = is_builtin(*key);
      if (f.builtin) {
        port_ = Port::Execute;
      } else if (!db_.defines(*key)) {
        f.message = "existence_error(procedure, " + key->to_string() + ")";
        port_ = Port::Fail;
      } else {
        f.candidates = db_.live_clauses(*key);
        f.next = 0;
        port_ = Port::Try;
      }
      return ev;
    }

    case Port::Execute: {
      Frame& f = *cursor_;
      try {
        BuiltinResult r = run_builtin(f);
        port_ = r.success ? Port::Exit : Port::Fail;
        return r.event;
      } catch (const EngineError& e) {
        abort_message_ = e.what();
        port_ = Port::Abort;
        return std::nullopt;
      }
    }

    case Port::Try: {
      Frame& f = *cursor_;
      trail_.undo_to(f.trail_mark, subst_);
      f.active.reset();
      while (!f.cut && f.next < f.candidates.size()) {
        const Clause& stored = db_.clause(f.candidates[f.next++]);
        if (stored.retracted) continue;
        Clause instance = rename_apart(stored, counter_);
        if (!unify(f.goal, instance.head, subst_, trail_)) continue;
        f.active = activate(&f, instance, f.address.child(Segment::alt(stored.id)));
        if (f.active->body.empty()) {
          port_ = Port::Exit;
        } else {
          cursor_ = new_frame(f.active.get(), 0);
          port_ = Port::Call;
        }
        return std::nullopt;
      }
      port_ = Port::Fail;
      return std::nullopt;
    }

    case Port::Exit: {
      Frame& f = *cursor_;
      TraceEvent ev = goal_event(EventKind::Exit, f);
      Activation* act = f.parent;
      if (f.position + 1 < act->body.size()) {
        cursor_ = new_frame(act, f.position + 1);
        port_ = Port::Call;
      } else if (act->owner != nullptr) {
        cursor_ = act->owner;
        port_ = Port::Exit;
      } else {
        port_ = Port::Solution;
      }
      return ev;
    }

    case Port::Fail: {
      Frame& f = *cursor_;
      trail_.undo_to(f.trail_mark, subst_);
      TraceEvent ev = goal_event(EventKind::Fail, f);
      ev.message = std::move(f.message);
      Activation* act = f.parent;
      std::size_t pos = f.position;
      bool through_cut = f.cut_executed;
      // f is destroyed below.
      if (!through_cut && pos > 0) {
        act->goals.resize(pos);
        cursor_ = act->goals[pos - 1].get();
        port_ = Port::Redo;
      } else {
        act->goals.clear();
        if (act->owner != nullptr) {
          cursor_ = act->owner;
          port_ = Port::Try;
        } else {
          port_ = Port::QueryFailed;
        }
      }
      return ev;
    }

    case Port::Redo: {
      Frame& f = *cursor_;
      TraceEvent ev = goal_event(EventKind::Redo, f);
      if (f.builtin) {
        port_ = Port::Fail;
      } else if (f.active && !f.active->goals.empty()) {
        cursor_ = f.active->goals.back().get();
        port_ = Port::Redo;
      } else {
        port_ = Port::Try;
      }
      return ev;
    }

    case Port::Solution: {
      ++solutions_;
      TraceEvent ev;
      ev.kind = EventKind::SolutionFound;
      ev.address = query_address();
      ev.bindings = snapshot(*root_);
      ev.success = true;
      port_ = Port::AfterSolution;
      return ev;
    }

    case Port::AfterSolution: {
      TraceEvent ev;
      if (query_has_variables()) {
        ev.kind = EventKind::PromptBacktrack;
        ev.address = query_address();
        ev.bindings = snapshot(*root_);
        status_ = MachineStatus::AwaitingBacktrackAnswer;
      } else {
        ev.kind = EventKind::QueryDone;
        ev.success = true;
        status_ = MachineStatus::Done;
      }
      port_ = Port::Idle;
      return ev;
    }

    case Port::QueryFailed:
    case Port::Abort: {
      TraceEvent ev;
      ev.kind = EventKind::QueryDone;
      ev.success = false;
      ev.message = std::move(abort_message_);
      status_ = MachineStatus::Done;
      port_ = Port::Idle;
      return ev;
    }

    case Port::Idle:
      break;
  }
  throw PreconditionError("step: machine has no pending work");
}

Machine::BuiltinResult Machine::run_builtin(Frame& f) {
  Term goal = subst_.walk(f.goal);
  const std::string& name = goal.name();
  const std::size_t arity = goal.arity();
  auto arg = [&](std::size_t i) { return goal.arg(i); };
  auto ok = [](bool success) { return BuiltinResult{success, std::nullopt}; };

  if (arity == 0) {
    if (name == "true") return ok(true);
    if (name == "fail") return ok(false);
    if (name == "!") return cut(f);
    if (name == "nl") {
      output_ += '\n';
      TraceEvent ev;
      ev.kind = EventKind::Output;
      ev.text = "\n";
      return {true, std::move(ev)};
    }
  }
  if (arity == 1) {
    if (name == "write") {
      std::string text = text_of(arg(0), false);
      output_ += text;
      TraceEvent ev;
      ev.kind = EventKind::Output;
      ev.text = std::move(text);
      return {true, std::move(ev)};
    }
    if (name == "var") return ok(subst_.walk(arg(0)).is_var());
    if (name == "nonvar") return ok(!subst_.walk(arg(0)).is_var());
    if (name == "atom") return ok(subst_.walk(arg(0)).is_atom());
    if (name == "asserta") return assert_clause(DbChange::AssertA, arg(0));
    if (name == "assertz") return assert_clause(DbChange::AssertZ, arg(0));
    if (name == "retract") return retract_clause(arg(0));
  }
  if (arity == 2) {
    if (name == "=") return ok(unify(arg(0), arg(1), subst_, trail_));
    if (name == "\\=") {
      std::size_t mark = trail_.mark();
      bool unifies = unify(arg(0), arg(1), subst_, trail_);
      trail_.undo_to(mark, subst_);
      return ok(!unifies);
    }
    if (name == "==") return ok(identical(subst_.resolve(arg(0)), subst_.resolve(arg(1))));
    if (name == "\\==") return ok(!identical(subst_.resolve(arg(0)), subst_.resolve(arg(1))));
    if (name == "is") {
      Term value = Term::integer(eval(arg(1)));
      return ok(unify(arg(0), value, subst_, trail_));
    }
    std::int64_t a = 0, b = 0;
    if (name == "=:=" || name == "=\\=" || name == "<" || name == ">" || name == "=<" ||
        name == ">=") {
      a = eval(arg(0));
      b = eval(arg(1));
    }
    if (name == "=:=") return ok(a == b);
    if (name == "=\\=") return ok(a != b);
    if (name == "<") return ok(a < b);
    if (name == ">") return ok(a > b);
    if (name == "=<") return ok(a <= b);
    if (name == ">=") return ok(a >= b);
  }
  throw EngineError(error_text("existence_error(builtin)", goal));
}

std::int64_t Machine::eval(const Term& t) const {
  Term x = subst_.walk(t);
  if (x.is_integer()) return x.value();
  if (x.is_var()) throw EngineError("instantiation_error in arithmetic");
  auto type_error = [&]() {
    return EngineError("type_error(evaluable, " + predicate_key(x)->to_string() + ")");
  };
  if (!x.is_compound()) throw type_error();
  std::int64_t out = 0;
  if (x.arity() == 1 && x.name() == "-") {
    if (__builtin_sub_overflow(std::int64_t{0}, eval(x.arg(0)), &out)) {
      throw EngineError("evaluation_error(int_overflow)");
    }
    return out;
  }
  if (x.arity() != 2) throw type_error();
  const std::string& op = x.name();
  if (op != "+" && op != "-" && op != "*" && op != "/" && op != "mod") throw type_error();
  std::int64_t a = eval(x.arg(0));
  std::int64_t b = eval(x.arg(1));
  bool overflow = false;
  if (op == "+") {
    overflow = __builtin_add_overflow(a, b, &out);
  } else if (op == "-") {
    overflow = __builtin_sub_overflow(a, b, &out);
  } else if (op == "*") {
    overflow = __builtin_mul_overflow(a, b, &out);
  } else {
    if (b == 0) throw EngineError("evaluation_error(zero_divisor)");
    if (a == INT64_MIN && b == -1) {
      overflow = op == "/";
      out = 0;
    } else if (op == "/") {
      out = a / b;
    } else {
      out = a % b;
      if (out != 0 && ((out < 0) != (b < 0))) out += b;
    }
  }
  if (overflow) throw EngineError("evaluation_error(int_overflow)");
  return out;
}

Machine::BuiltinResult Machine::cut(Frame& f) {
  Activation* act = f.parent;
  TraceEvent ev;
  ev.kind = EventKind::CutPrune;
  ev.address = f.address;
  ev.goal = "!";
  ev.bindings = snapshot(*act);
  for (std::size_t i = 0; i < f.position; ++i) collect_subtree(*act->goals[i], ev.pruned);
  if (act->owner != nullptr) {
    collect_untried(*act->owner, ev.pruned);
    act->owner->cut = true;
  } else {
    root_cut_ = true;
  }
  f.cut_executed = true;
  return {true, std::move(ev)};
}

// Alternatives of f that would still be tried on backtracking.
void Machine::collect_untried(Frame& f, std::vector<NodeAddress>& out) {
  if (f.builtin || f.cut) return;
  for (std::size_t i = f.next; i < f.candidates.size(); ++i) {
    const Clause& stored = db_.clause(f.candidates[i]);
    if (stored.retracted) continue;
    VarCounter scratch(counter_.peek());
    Clause instance = rename_apart(stored, scratch);
    if (unifiable(f.called, instance.head)) {
      out.push_back(f.address.child(Segment::alt(stored.id)));
    }
  }
}

void Machine::collect_subtree(Frame& f, std::vector<NodeAddress>& out) {
  if (f.builtin) return;
  if (f.active) {
    for (auto& g : f.active->goals) collect_subtree(*g, out);
  }
  collect_untried(f, out);
  f.cut = true;
}

std::optional<ClauseId> Machine::db_change(DbChange kind, const Term& clause) {
  Term t = subst_.resolve(clause);
  Term head = t;
  Term body = Term::atom("true");
  if (t.is(":-", 2)) {
    head = t.arg(0);
    body = t.arg(1);
  }
  if (head.is_var()) throw EngineError("instantiation_error: clause head is a variable");
  if (!head.is_callable()) {
    throw EngineError("type_error(callable, " + format_term(head) + ")");
  }
  auto key = *predicate_key(head);
  if (is_builtin(key) || key.name == kQueryHead) {
    throw EngineError("permission_error(modify, static_procedure, " + key.to_string() + ")");
  }
  if (kind == DbChange::Retract) {
    Term body_pattern = body;
    for (ClauseId id : db_.live_clauses(key)) {
      Clause instance = rename_apart(db_.clause(id), counter_);
      std::size_t mark = trail_.mark();
      if (unify(head, instance.head, subst_, trail_) &&
          unify(body_pattern, make_conjunction(instance.body), subst_, trail_)) {
        db_.retract(id);
        return id;
      }
      trail_.undo_to(mark, subst_);
    }
    return std::nullopt;
  }
  std::vector<Term> goals = conjuncts(body);
  for (const Term& g : goals) {
    if (g.is_var()) throw EngineError("instantiation_error: variable body goal");
    if (!g.is_callable()) throw EngineError("type_error(callable, " + format_term(g) + ")");
  }
  Term stored = rename_term(Term::compound(":-", {head, make_conjunction(goals)}), counter_);
  return db_.add(stored.arg(0), conjuncts(stored.arg(1)),
                 kind == DbChange::AssertA ? InsertAt::Front : InsertAt::Back);
}

Machine::BuiltinResult Machine::assert_clause(DbChange kind, const Term& clause) {
  ClauseId id = *db_change(kind, clause);
  const Clause& stored = db_.clause(id);
  TraceEvent ev;
  ev.kind = kind == DbChange::AssertA ? EventKind::DbAssertA : EventKind::DbAssertZ;
  ev.clause_id = id;
  ev.clause_text = format_clause(stored.head, stored.body);
  return {true, std::move(ev)};
}

Machine::BuiltinResult Machine::retract_clause(const Term& clause) {
  auto id = db_change(DbChange::Retract, clause);
  if (!id) return {false, std::nullopt};
  const Clause& stored = db_.clause(*id);
  TraceEvent ev;
  ev.kind = EventKind::DbRetract;
  ev.clause_id = *id;
  ev.clause_text = format_clause(stored.head, stored.body);
  return {true, std::move(ev)};
}

}  // namespace logichart
