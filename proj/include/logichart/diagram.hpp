#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logichart/address.hpp"
#include "logichart/machine.hpp"
#include "logichart/program.hpp"
#include "logichart/term.hpp"

namespace logichart {

enum class NodeKind { Root, ClauseHead, UserGoal, BuiltinGoal, RecursiveGoal };

std::string_view to_string(NodeKind kind);

// Monospace text model.
struct TextMetrics {
  int char_width = 8;
  int box_height = 24;
  int padding = 8;

  // Label length in code points times char_width plus padding on both sides.
  int width_of(std::string_view label) const;
};

struct LayoutConstants {
  int root_x = 10;
  int root_y = 10;
  int gap_x = 20;
  int gap_y = 12;
};

struct DiagramNode {
  NodeAddress address;
  NodeKind kind = NodeKind::UserGoal;
  std::string label;
  // Static goal or clause head as written in the source.
  Term term;
  // Set for ClauseHead (and Root: the query clause).
  std::optional<ClauseId> clause;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  bool retracted = false;
  // Body goals, left to right (Root and ClauseHead).
  std::vector<NodeAddress> horizontal;
  // Alternative clause heads, top to bottom (UserGoal).
  std::vector<NodeAddress> vertical;
};

class Diagram {
 public:
  Diagram() = default;
  Diagram(TextMetrics metrics, LayoutConstants constants)
      : metrics_(metrics), constants_(constants) {}

  const TextMetrics& metrics() const { return metrics_; }
  const LayoutConstants& constants() const { return constants_; }

  const DiagramNode& root() const { return nodes_.at(NodeAddress{}); }
  const DiagramNode* find(const NodeAddress& a) const;
  DiagramNode* find(const NodeAddress& a);
  const DiagramNode& at(const NodeAddress& a) const { return nodes_.at(a); }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  // Root first, then each node followed by its horizontal then vertical
  // subtrees.
  std::vector<const DiagramNode*> preorder() const;
  const std::map<NodeAddress, DiagramNode>& nodes() const { return nodes_; }

  DiagramNode& insert(DiagramNode node);

  // Horizontal extent of the subdiagram rooted at a (valid after layout).
  int subtree_width(const NodeAddress& a) const;
  // Vertical extent of the subdiagram rooted at a (valid after layout).
  int depth(const NodeAddress& a) const;

  // Deepest node whose address is a prefix of a.
  const DiagramNode& nearest(const NodeAddress& a) const;

 private:
  TextMetrics metrics_;
  LayoutConstants constants_;
  std::map<NodeAddress, DiagramNode> nodes_;
};

// Expands program + query into an unpositioned diagram. The root stands for
// the synthetic query clause, whose id is p.next_id().
Diagram build_diagram(const Program& p, const std::vector<Term>& query,
                      TextMetrics metrics = {}, LayoutConstants constants = {});

// Assigns coordinates.
Diagram layout(Diagram d);

struct DiagramPatch {
  std::vector<NodeAddress> added;
  std::vector<NodeAddress> crossed;
  // Pre-existing nodes whose position changed.
  std::vector<NodeAddress> moved;

  bool empty() const { return added.empty() && crossed.empty() && moved.empty(); }
};

struct PatchResult {
  Diagram diagram;
  DiagramPatch patch;
};

// Reflects a DbAssertA/DbAssertZ/DbRetract event. `database` is the clause
// store after the change; asserted clauses are looked up there by id.
PatchResult apply_patch(const Diagram& d, const Program& database, const TraceEvent& change);

}  // namespace logichart
