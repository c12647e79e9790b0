#include "logichart/session.hpp"

#include <array>
#include <atomic>
#include <stdexcept>

#include "logichart/errors.hpp"
#include "logichart/reader.hpp"

namespace logichart {

std::string_view to_string(MessageKind kind) {
  static constexpr std::array<std::string_view, 9> names{
      "DiagramFull", "NodeState", "DiagramPatch", "Bindings", "OutputText",
      "PromptBacktrack", "Done", "Error", "Ack"};
  return names[static_cast<std::size_t>(kind)];
}

namespace {

std::size_t extra_alternatives(const NodeAddress& runtime, const NodeAddress& shown) {
  std::size_t n = 0;
  for (std::size_t i = shown.size(); i < runtime.size(); ++i) {
    if (runtime.segments()[i].is_alt()) ++n;
  }
  return n;
}

Message bindings_message(const NodeAddress& address, std::vector<VarBinding> vars,
                         std::string text = {}) {
  Message m;
  m.kind = MessageKind::Bindings;
  m.address = address;
  m.vars = std::move(vars);
  m.text = std::move(text);
  return m;
}

std::atomic<std::uint64_t> next_session{1};

}  // namespace

void apply_event(StateMap& states, const Diagram& d, const TraceEvent& e,
                 std::vector<Message>* out) {
  auto set_state = [&](const NodeAddress& a, EventKind kind) {
    auto to = transition(state_of(states, a), kind);
    if (!to) return;
    states[a] = *to;
    if (out) {
      Message m;
      m.kind = MessageKind::NodeState;
      m.address = a;
      m.state = *to;
      out->push_back(std::move(m));
    }
  };

  if (is_port_event(e.kind) && e.address) {
    const NodeAddress& a = *e.address;
    if (d.find(a) != nullptr) {
      set_state(a, e.kind);
      if (out) out->push_back(bindings_message(a, e.bindings));
    } else if (out) {
      const DiagramNode& shown = d.nearest(a);
      std::size_t depth = extra_alternatives(a, shown.address);
      out->push_back(bindings_message(shown.address, e.bindings,
                                      std::string(to_string(e.kind)) + " " + e.goal +
                                          " at recursion depth " + std::to_string(depth)));
    }
  } else if (e.kind == EventKind::CutPrune) {
    for (const NodeAddress& a : e.pruned) {
      if (d.find(a) != nullptr) set_state(a, EventKind::CutPrune);
    }
  }
}

Session::Session(std::string id, Machine machine, Diagram diagram)
    : id_(std::move(id)),
      machine_(std::move(machine)),
      diagram_(std::make_shared<const Diagram>(std::move(diagram))) {}

Session Session::create(std::string_view program_source, std::string_view query_source,
                        TextMetrics metrics, LayoutConstants constants) {
  Program program = parse_program(program_source);
  std::vector<Term> query = parse_query(query_source, program.max_var_id() + 1);
  Diagram d = layout(build_diagram(program, query, metrics, constants));
  Machine m(std::move(program), std::move(query));
  return Session("s" + std::to_string(next_session++), std::move(m), std::move(d));
}

Message Session::diagram_full() const {
  Message m;
  m.kind = MessageKind::DiagramFull;
  m.diagram = diagram_;
  return m;
}

void Session::record(const TraceEvent& e, std::vector<Message>& out) {
  log_.push_back(e);
  apply_event(states_, *diagram_, e, &out);
  if (is_port_event(e.kind) && e.address) {
    const NodeAddress& shown = diagram_->nearest(*e.address).address;
    for (const VarBinding& b : e.bindings) panel_.push_back({shown, b.name, b.value});
  }

  switch (e.kind) {
    case EventKind::DbAssertA:
    case EventKind::DbAssertZ:
    case EventKind::DbRetract: {
      PatchResult r = apply_patch(*diagram_, machine_.database(), e);
      diagram_ = std::make_shared<const Diagram>(std::move(r.diagram));
      Message m;
      m.kind = MessageKind::DiagramPatch;
      m.diagram = diagram_;
      m.patch = std::move(r.patch);
      m.text = e.clause_text;
      out.push_back(std::move(m));
      break;
    }
    case EventKind::Output: {
      Message m;
      m.kind = MessageKind::OutputText;
      m.text = e.text;
      out.push_back(std::move(m));
      break;
    }
    case EventKind::SolutionFound:
      out.push_back(bindings_message(NodeAddress{}, e.bindings));
      break;
    case EventKind::PromptBacktrack: {
      Message m;
      m.kind = MessageKind::PromptBacktrack;
      m.vars = e.bindings;
      out.push_back(std::move(m));
      break;
    }
    case EventKind::QueryDone: {
      if (!e.message.empty()) {
        Message err;
        err.kind = MessageKind::Error;
        err.message = e.message;
        out.push_back(std::move(err));
      }
      Message m;
      m.kind = MessageKind::Done;
      m.success = e.success;
      m.solutions = machine_.solutions();
      out.push_back(std::move(m));
      break;
    }
    default:
      break;
  }
}

void Session::require_running() const {
  if (machine_.status() != MachineStatus::Running) {
    throw PreconditionError(machine_.status() == MachineStatus::Done
                                ? "the query has finished"
                                : "waiting for the backtracking answer");
  }
}

std::vector<Message> Session::step() {
  require_running();
  mode_ = Mode::OneStep;
  std::vector<Message> out;
  record(machine_.step(), out);
  return out;
}

std::vector<Message> Session::run(std::size_t budget) {
  require_running();
  mode_ = Mode::Automatic;
  std::vector<Message> out;
  for (std::size_t n = 0; machine_.status() == MachineStatus::Running; ++n) {
    if (n == budget) {
      Message m;
      m.kind = MessageKind::Error;
      m.message = "stopped after " + std::to_string(budget) + " events";
      out.push_back(std::move(m));
      break;
    }
    record(machine_.step(), out);
  }
  return out;
}

std::vector<Message> Session::answer_backtrack(bool more) {
  if (machine_.status() != MachineStatus::AwaitingBacktrackAnswer) {
    throw PreconditionError("no backtracking question is pending");
  }
  std::vector<Message> out;
  if (auto done = machine_.answer_backtrack(more)) {
    record(*done, out);
    return out;
  }
  if (mode_ == Mode::Automatic) return run();
  record(machine_.step(), out);
  return out;
}

StateMap Session::replay(std::size_t upto) const {
  if (upto > log_.size()) {
    throw std::out_of_range("replay: index " + std::to_string(upto) + " beyond log length " +
                            std::to_string(log_.size()));
  }
  StateMap states;
  for (std::size_t i = 0; i < upto; ++i) apply_event(states, *diagram_, log_[i]);
  return states;
}

}  // namespace logichart
