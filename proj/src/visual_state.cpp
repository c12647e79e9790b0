#include "logichart/visual_state.hpp"

#include <array>

namespace logichart {

namespace {
constexpr std::array<std::string_view, 5> kNames{"Untouched", "Called", "Succeeded", "Failed",
                                                 "Pruned"};
}  // namespace

std::string_view to_string(VisualState s) { return kNames[static_cast<std::size_t>(s)]; }

std::optional<VisualState> visual_state_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<VisualState>(i);
  }
  return std::nullopt;
}

std::optional<VisualState> transition(VisualState from, EventKind kind) {
  if (from == VisualState::Pruned) return std::nullopt;
  switch (kind) {
    case EventKind::Call:
      if (from == VisualState::Called) return std::nullopt;
      return VisualState::Called;
    case EventKind::Redo:
      if (from == VisualState::Succeeded || from == VisualState::Failed) return VisualState::Called;
      return std::nullopt;
    case EventKind::Exit:
      if (from == VisualState::Called) return VisualState::Succeeded;
      return std::nullopt;
    case EventKind::Fail:
      if (from == VisualState::Called) return VisualState::Failed;
      return std::nullopt;
    case EventKind::CutPrune:
      return VisualState::Pruned;
    default:
      return std::nullopt;
  }
}

}  // namespace logichart
