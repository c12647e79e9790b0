#pragma once

#include <json.hpp>

#include "logichart/diagram.hpp"
#include "logichart/machine.hpp"
#include "logichart/session.hpp"
#include "logichart/visual_state.hpp"

namespace logichart {

using json = nlohmann::json;

// [{"alt":5},{"body":0}]
json to_json(const NodeAddress& a);
NodeAddress address_from_json(const json& j);

json to_json(const DiagramNode& n);
// {"nodes":[...], "constants":{...}} in preorder.
json to_json(const Diagram& d);
// Lists added/crossed/moved addresses plus the current form of every node
// the client has to redraw.
json to_json(const DiagramPatch& p, const Diagram& after);
json to_json(const TraceEvent& e);
json to_json(const StateMap& states);
json to_json(const Message& m);

}  // namespace logichart
