#include "logichart/svg.hpp"

#include <algorithm>
#include <sstream>

namespace logichart {

std::string_view fill_color(VisualState s) {
  switch (s) {
    case VisualState::Untouched: return "#ffffff";
    case VisualState::Called: return "#66cc66";
    case VisualState::Succeeded: return "#6699ff";
    case VisualState::Failed: return "#ff6666";
    case VisualState::Pruned: return "#bbbbbb";
  }
  return "#ffffff";
}

namespace {

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void line(std::ostream& os, int x1, int y1, int x2, int y2, std::string_view cls) {
  os << "<line class=\"" << cls << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
     << "\" y2=\"" << y2 << "\"/>\n";
}

void rect(std::ostream& os, int x, int y, int w, int h, std::string_view fill,
          std::string_view extra) {
  os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"" << fill << "\"" << extra << "/>\n";
}

void node_shape(std::ostream& os, const DiagramNode& n, std::string_view fill) {
  switch (n.kind) {
    case NodeKind::Root:
    case NodeKind::ClauseHead:
      rect(os, n.x, n.y, n.width, n.height, fill, " rx=\"8\" ry=\"8\" stroke=\"#000000\"");
      break;
    case NodeKind::UserGoal:
      rect(os, n.x, n.y, n.width, n.height, fill, " stroke=\"#000000\"");
      break;
    case NodeKind::BuiltinGoal:
      rect(os, n.x, n.y, n.width, n.height, fill, " stroke=\"#000000\"");
      rect(os, n.x + 3, n.y + 3, n.width - 6, n.height - 6, "none", " stroke=\"#000000\"");
      break;
    case NodeKind::RecursiveGoal:
      rect(os, n.x, n.y, n.width, n.height, fill,
           " stroke=\"#000000\" stroke-dasharray=\"4 3\"");
      break;
  }
}

}  // namespace

std::string render_svg(const Diagram& d, const StateMap& states) {
  int width = 0;
  int height = 0;
  for (const auto& [address, n] : d.nodes()) {
    width = std::max(width, n.x + n.width);
    height = std::max(height, n.y + n.height);
  }
  width += d.constants().root_x;
  height += d.constants().root_y;
  const int font_size = std::max(8, d.metrics().char_width * 13 / 8);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<style>line{stroke:#000000;stroke-width:1}line.cross{stroke:#cc0000;stroke-width:2}"
     << "text{font-family:monospace;font-size:" << font_size << "px}</style>\n";

  std::vector<const DiagramNode*> order = d.preorder();

  os << "<g class=\"connectors\">\n";
  for (const DiagramNode* n : order) {
    const DiagramNode* prev = n;
    for (const NodeAddress& c : n->horizontal) {
      const DiagramNode& next = d.at(c);
      int mid = prev->y + prev->height / 2;
      line(os, prev->x + prev->width, mid, next.x, mid, "h");
      prev = &next;
    }
    if (!n->vertical.empty()) {
      const DiagramNode& last = d.at(n->vertical.back());
      line(os, n->x, n->y + n->height, n->x, last.y + last.height / 2, "v");
    }
  }
  os << "</g>\n";

  for (const DiagramNode* n : order) {
    VisualState s = state_of(states, n->address);
    os << "<g class=\"node " << to_string(n->kind) << "\" data-address=\""
       << n->address.to_string() << "\" data-state=\"" << to_string(s) << "\">\n";
    node_shape(os, *n, fill_color(s));
    os << "<text x=\"" << n->x + d.metrics().padding << "\" y=\""
       << n->y + n->height / 2 + font_size / 3 << "\">" << escape(n->label) << "</text>\n";
    if (n->retracted) {
      line(os, n->x, n->y, n->x + n->width, n->y + n->height, "cross");
      line(os, n->x, n->y + n->height, n->x + n->width, n->y, "cross");
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace logichart
