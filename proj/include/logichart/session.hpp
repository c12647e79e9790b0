#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logichart/diagram.hpp"
#include "logichart/machine.hpp"
#include "logichart/visual_state.hpp"

namespace logichart {

enum class MessageKind {
  DiagramFull,
  NodeState,
  DiagramPatch,
  Bindings,
  OutputText,
  PromptBacktrack,
  Done,
  Error,
  Ack,
};

std::string_view to_string(MessageKind kind);

// Response or event sent to a session client.
struct Message {
  MessageKind kind = MessageKind::Ack;
  std::optional<NodeAddress> address;
  std::optional<VisualState> state;
  // DiagramFull carries the whole diagram, DiagramPatch the diagram after
  // the change.
  std::shared_ptr<const Diagram> diagram;
  std::optional<logichart::DiagramPatch> patch;
  std::vector<VarBinding> vars;
  std::string text;
  bool success = false;
  std::size_t solutions = 0;
  std::string message;
};

enum class Mode { OneStep, Automatic };

struct BindingRow {
  NodeAddress address;
  std::string name;
  std::string value;

  bool operator==(const BindingRow&) const = default;
};

// Folds one trace event into the state map. Port events only recolour
// nodes that exist in d; anything deeper than a recursion cutoff is
// reported through Bindings on the nearest node instead. Messages for the
// event are appended to out when given.
void apply_event(StateMap& states, const Diagram& d, const TraceEvent& e,
                 std::vector<Message>* out = nullptr);

inline constexpr std::size_t kDefaultRunBudget = 1'000'000;

// One program + query run.
class Session {
 public:
  // Throws ParseError for bad sources.
  static Session create(std::string_view program_source, std::string_view query_source,
                        TextMetrics metrics = {}, LayoutConstants constants = {});

  Session(Session&&) noexcept = default;
  Session& operator=(Session&&) noexcept = default;

  // One machine event. Throws PreconditionError unless the machine is
  // Running.
  std::vector<Message> step();
  // Steps until Done or PromptBacktrack. A run that exceeds the budget ends
  // with an Error message and leaves the machine Running.
  std::vector<Message> run(std::size_t budget = kDefaultRunBudget);
  // "no" ends the run; "yes" backtracks and continues in the current mode.
  std::vector<Message> answer_backtrack(bool more);

  // States after the first `upto` log events. Throws std::out_of_range.
  StateMap replay(std::size_t upto) const;

  Message diagram_full() const;

  const std::string& id() const { return id_; }
  Mode mode() const { return mode_; }
  MachineStatus status() const { return machine_.status(); }
  const Machine& machine() const { return machine_; }
  const Diagram& diagram() const { return *diagram_; }
  const StateMap& states() const { return states_; }
  const std::vector<TraceEvent>& log() const { return log_; }
  const std::vector<BindingRow>& bindings_panel() const { return panel_; }

 private:
  Session(std::string id, Machine machine, Diagram diagram);

  void require_running() const;
  void record(const TraceEvent& e, std::vector<Message>& out);

  std::string id_;
  Machine machine_;
  std::shared_ptr<const Diagram> diagram_;
  StateMap states_;
  Mode mode_ = Mode::OneStep;
  std::vector<TraceEvent> log_;
  std::vector<BindingRow> panel_;
};

}  // namespace logichart
