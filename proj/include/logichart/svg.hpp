#pragma once

#include <string>
#include <string_view>

#include "logichart/diagram.hpp"
#include "logichart/visual_state.hpp"

namespace logichart {

// Fill colour used for a visual state.
std::string_view fill_color(VisualState s);

// SVG 1.1 document for a positioned diagram. Output depends only on the
// inputs, byte for byte.
std::string render_svg(const Diagram& d, const StateMap& states = {});

}  // namespace logichart
