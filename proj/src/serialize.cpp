#include "logichart/serialize.hpp"

#include <set>
#include <stdexcept>

namespace logichart {

json to_json(const NodeAddress& a) {
  json out = json::array();
  for (const Segment& s : a.segments()) {
    out.push_back(json{{s.is_alt() ? "alt" : "body", s.value}});
  }
  return out;
}

NodeAddress address_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("address must be an array");
  std::vector<Segment> segments;
  for (const json& s : j) {
    if (!s.is_object() || s.size() != 1) {
      throw std::invalid_argument("address segment must be {\"alt\":n} or {\"body\":n}");
    }
    auto it = s.begin();
    auto value = it.value().get<std::uint32_t>();
    if (it.key() == "alt") {
      segments.push_back(Segment::alt(ClauseId{value}));
    } else if (it.key() == "body") {
      segments.push_back(Segment::body(value));
    } else {
      throw std::invalid_argument("unknown address segment '" + it.key() + "'");
    }
  }
  return NodeAddress(std::move(segments));
}

namespace {

json address_list(const std::vector<NodeAddress>& list) {
  json out = json::array();
  for (const NodeAddress& a : list) out.push_back(to_json(a));
  return out;
}

json vars_json(const std::vector<VarBinding>& vars) {
  json out = json::array();
  for (const VarBinding& v : vars) out.push_back({{"name", v.name}, {"value", v.value}});
  return out;
}

}  // namespace

json to_json(const DiagramNode& n) {
  json out{{"address", to_json(n.address)},
           {"kind", to_string(n.kind)},
           {"label", n.label},
           {"x", n.x},
           {"y", n.y},
           {"w", n.width},
           {"h", n.height},
           {"retracted", n.retracted},
           {"horizontal", address_list(n.horizontal)},
           {"vertical", address_list(n.vertical)}};
  if (n.clause) out["clause"] = to_index(*n.clause);
  return out;
}

json to_json(const Diagram& d) {
  json nodes = json::array();
  for (const DiagramNode* n : d.preorder()) nodes.push_back(to_json(*n));
  const LayoutConstants& k = d.constants();
  const TextMetrics& m = d.metrics();
  return {{"nodes", std::move(nodes)},
          {"constants",
           {{"gap_x", k.gap_x},
            {"gap_y", k.gap_y},
            {"root_x", k.root_x},
            {"root_y", k.root_y},
            {"char_width", m.char_width},
            {"padding", m.padding},
            {"box_height", m.box_height}}}};
}

json to_json(const DiagramPatch& p, const Diagram& after) {
  std::set<NodeAddress> touched(p.added.begin(), p.added.end());
  touched.insert(p.crossed.begin(), p.crossed.end());
  touched.insert(p.moved.begin(), p.moved.end());
  for (const NodeAddress& a : p.added) {
    if (!a.empty() && after.find(a.parent()) != nullptr) touched.insert(a.parent());
  }
  json nodes = json::array();
  for (const DiagramNode* n : after.preorder()) {
    if (touched.contains(n->address)) nodes.push_back(to_json(*n));
  }
  return {{"added", address_list(p.added)},
          {"crossed", address_list(p.crossed)},
          {"moved", address_list(p.moved)},
          {"nodes", std::move(nodes)}};
}

json to_json(const TraceEvent& e) {
  json out{{"kind", to_string(e.kind)}};
  if (e.address) out["address"] = to_json(*e.address);
  if (!e.goal.empty()) out["goal"] = e.goal;
  if (!e.bindings.empty()) out["vars"] = vars_json(e.bindings);
  if (e.clause_id) out["clause"] = to_index(*e.clause_id);
  if (!e.clause_text.empty()) out["clause_text"] = e.clause_text;
  if (e.kind == EventKind::CutPrune) out["pruned"] = address_list(e.pruned);
  if (e.kind == EventKind::QueryDone) out["success"] = e.success;
  if (e.kind == EventKind::Output) out["text"] = e.text;
  if (!e.message.empty()) out["message"] = e.message;
  return out;
}

json to_json(const StateMap& states) {
  json out = json::array();
  for (const auto& [address, state] : states) {
    out.push_back({{"address", to_json(address)}, {"state", to_string(state)}});
  }
  return out;
}

json to_json(const Message& m) {
  json out{{"kind", to_string(m.kind)}};
  switch (m.kind) {
    case MessageKind::DiagramFull:
      out["diagram"] = m.diagram ? to_json(*m.diagram) : json::object();
      break;
    case MessageKind::NodeState:
      out["address"] = to_json(m.address.value_or(NodeAddress{}));
      out["state"] = to_string(m.state.value_or(VisualState::Untouched));
      break;
    case MessageKind::DiagramPatch:
      out["patch"] = m.patch && m.diagram ? to_json(*m.patch, *m.diagram) : json::object();
      out["text"] = m.text;
      break;
    case MessageKind::Bindings:
      out["address"] = to_json(m.address.value_or(NodeAddress{}));
      out["vars"] = vars_json(m.vars);
      if (!m.text.empty()) out["text"] = m.text;
      break;
    case MessageKind::OutputText:
      out["text"] = m.text;
      break;
    case MessageKind::PromptBacktrack:
      out["vars"] = vars_json(m.vars);
      break;
    case MessageKind::Done:
      out["success"] = m.success;
      out["solutions"] = m.solutions;
      break;
    case MessageKind::Error:
      out["message"] = m.message;
      break;
    case MessageKind::Ack:
      if (!m.text.empty()) out["text"] = m.text;
      break;
  }
  return out;
}

}  // namespace logichart
