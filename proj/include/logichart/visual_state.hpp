#pragma once

#include <map>
#include <optional>
#include <string_view>

#include "logichart/address.hpp"
#include "logichart/machine.hpp"

namespace logichart {

enum class VisualState { Untouched, Called, Succeeded, Failed, Pruned };

std::string_view to_string(VisualState s);
std::optional<VisualState> visual_state_from_string(std::string_view name);

// Absent addresses are Untouched.
using StateMap = std::map<NodeAddress, VisualState>;

// Target state for a port event, or nullopt if the table has no such edge:
//   Untouched -> Called (Call), Called -> Succeeded (Exit),
//   Called -> Failed (Fail), Succeeded|Failed -> Called (Redo or re-Call),
//   any -> Pruned (CutPrune); Pruned is terminal.
std::optional<VisualState> transition(VisualState from, EventKind kind);

inline VisualState state_of(const StateMap& states, const NodeAddress& a) {
  auto it = states.find(a);
  return it == states.end() ? VisualState::Untouched : it->second;
}

}  // namespace logichart
