#include "logichart/diagram.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "logichart/builtins.hpp"
#include "logichart/unify.hpp"
#include "logichart/writer.hpp"

namespace logichart {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Root: return "Root";
    case NodeKind::ClauseHead: return "ClauseHead";
    case NodeKind::UserGoal: return "UserGoal";
    case NodeKind::BuiltinGoal: return "BuiltinGoal";
    case NodeKind::RecursiveGoal: return "RecursiveGoal";
  }
  return "?";
}

int TextMetrics::width_of(std::string_view label) const {
  int chars = 0;
  for (char c : label) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++chars;
  }
  return chars * char_width + 2 * padding;
}

const DiagramNode* Diagram::find(const NodeAddress& a) const {
  auto it = nodes_.find(a);
  return it == nodes_.end() ? nullptr : &it->second;
}

DiagramNode* Diagram::find(const NodeAddress& a) {
  auto it = nodes_.find(a);
  return it == nodes_.end() ? nullptr : &it->second;
}

DiagramNode& Diagram::insert(DiagramNode node) {
  NodeAddress key = node.address;
  auto [it, inserted] = nodes_.insert_or_assign(std::move(key), std::move(node));
  return it->second;
}

std::vector<const DiagramNode*> Diagram::preorder() const {
  std::vector<const DiagramNode*> out;
  if (nodes_.empty()) return out;
  out.reserve(nodes_.size());
  std::vector<const DiagramNode*> work{&root()};
  while (!work.empty()) {
    const DiagramNode* n = work.back();
    work.pop_back();
    out.push_back(n);
    for (auto it = n->vertical.rbegin(); it != n->vertical.rend(); ++it) {
      work.push_back(&at(*it));
    }
    for (auto it = n->horizontal.rbegin(); it != n->horizontal.rend(); ++it) {
      work.push_back(&at(*it));
    }
  }
  return out;
}

namespace {

struct Bounds {
  int right;
  int bottom;
};

Bounds subtree_bounds(const Diagram& d, const DiagramNode& n) {
  Bounds b{n.x + n.width, n.y + n.height};
  for (const auto* list : {&n.horizontal, &n.vertical}) {
    for (const NodeAddress& c : *list) {
      Bounds cb = subtree_bounds(d, d.at(c));
      b.right = std::max(b.right, cb.right);
      b.bottom = std::max(b.bottom, cb.bottom);
    }
  }
  return b;
}

}  // namespace

int Diagram::subtree_width(const NodeAddress& a) const {
  const DiagramNode& n = at(a);
  return subtree_bounds(*this, n).right - n.x;
}

int Diagram::depth(const NodeAddress& a) const {
  const DiagramNode& n = at(a);
  return subtree_bounds(*this, n).bottom - n.y;
}

const DiagramNode& Diagram::nearest(const NodeAddress& a) const {
  // only the query clause segment under the root has no node of its own
  const DiagramNode* best = find(NodeAddress{});
  if (best == nullptr) throw std::out_of_range("diagram has no root");
  NodeAddress cur;
  for (const Segment& s : a.segments()) {
    cur = cur.child(s);
    const DiagramNode* node = find(cur);
    if (node == nullptr) {
      if (cur.size() == 1) continue;
      break;
    }
    best = node;
  }
  return *best;
}

namespace {

// Expands goals and clauses into diagram nodes.
class Builder {
 public:
  Builder(const Program& db, Diagram& d)
      : db_(db), diagram_(d), counter_(db.max_var_id() + 1) {}

  bool head_unifies(const Term& goal, const Term& head) {
    return unifiable(goal, rename_term(head, counter_));
  }

  void expand_goal(const NodeAddress& address, const Term& goal,
                   const std::set<PredicateKey>& ancestors) {
    PredicateKey key = *predicate_key(goal);
    DiagramNode node;
    node.address = address;
    node.label = format_term(goal);
    node.term = goal;
    if (is_builtin(key)) {
      node.kind = NodeKind::BuiltinGoal;
    } else if (ancestors.contains(key)) {
      node.kind = NodeKind::RecursiveGoal;
    } else {
      node.kind = NodeKind::UserGoal;
    }
    record(std::move(node));
    if (diagram_.at(address).kind != NodeKind::UserGoal) return;

    std::set<PredicateKey> inner = ancestors;
    inner.insert(key);
    std::vector<NodeAddress> alternatives;
    for (ClauseId id : db_.predicate(key)) {
      const Clause& c = db_.clause(id);
      if (!head_unifies(goal, c.head)) continue;
      NodeAddress alt = address.child(Segment::alt(id));
      expand_clause(alt, c, inner);
      alternatives.push_back(alt);
    }
    diagram_.find(address)->vertical = std::move(alternatives);
  }

  void expand_clause(const NodeAddress& address, const Clause& c,
                     const std::set<PredicateKey>& ancestors) {
    DiagramNode node;
    node.address = address;
    node.kind = NodeKind::ClauseHead;
    node.label = format_term(c.head);
    node.term = c.head;
    node.clause = c.id;
    node.retracted = c.retracted;
    record(std::move(node));
    std::vector<NodeAddress> goals;
    for (std::size_t j = 0; j < c.body.size(); ++j) {
      NodeAddress g = address.child(Segment::body(static_cast<std::uint32_t>(j)));
      expand_goal(g, c.body[j], ancestors);
      goals.push_back(g);
    }
    diagram_.find(address)->horizontal = std::move(goals);
  }

  const std::vector<NodeAddress>& added() const { return added_; }

 private:
  void record(DiagramNode node) {
    added_.push_back(node.address);
    diagram_.insert(std::move(node));
  }

  const Program& db_;
  Diagram& diagram_;
  VarCounter counter_;
  std::vector<NodeAddress> added_;
};

struct Extent {
  int width = 0;
  int depth = 0;
};

class Layout {
 public:
  explicit Layout(Diagram& d) : d_(d) {}

  void run() {
    measure(NodeAddress{});
    const LayoutConstants& k = d_.constants();
    place(NodeAddress{}, k.root_x, k.root_y);
  }

 private:
  Extent measure(const NodeAddress& a) {
    DiagramNode& n = *d_.find(a);
    const TextMetrics& m = d_.metrics();
    const LayoutConstants& k = d_.constants();
    n.width = m.width_of(n.label);
    n.height = m.box_height;
    Extent e{n.width, n.height};
    if (n.kind == NodeKind::Root || n.kind == NodeKind::ClauseHead) {
      for (const NodeAddress& c : n.horizontal) {
        Extent ce = measure(c);
        e.width += k.gap_x + ce.width;
        e.depth = std::max(e.depth, ce.depth);
      }
    } else if (n.kind == NodeKind::UserGoal) {
      for (const NodeAddress& c : n.vertical) {
        Extent ce = measure(c);
        e.width = std::max(e.width, ce.width);
        e.depth += k.gap_y + ce.depth;
      }
    }
    extents_[a] = e;
    return e;
  }

  void place(const NodeAddress& a, int x, int y) {
    DiagramNode& n = *d_.find(a);
    const LayoutConstants& k = d_.constants();
    n.x = x;
    n.y = y;
    if (n.kind == NodeKind::Root || n.kind == NodeKind::ClauseHead) {
      int cx = x + n.width + k.gap_x;
      for (const NodeAddress& c : n.horizontal) {
        place(c, cx, y);
        cx += extents_.at(c).width + k.gap_x;
      }
    } else if (n.kind == NodeKind::UserGoal) {
      int cy = y + n.height + k.gap_y;
      for (const NodeAddress& c : n.vertical) {
        place(c, x, cy);
        cy += extents_.at(c).depth + k.gap_y;
      }
    }
  }

  Diagram& d_;
  std::map<NodeAddress, Extent> extents_;
};

std::set<PredicateKey> ancestor_keys(const Diagram& d, const NodeAddress& a) {
  std::set<PredicateKey> keys;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const DiagramNode* node = d.find(a.prefix(n));
    if (node && (node->kind == NodeKind::Root || node->kind == NodeKind::ClauseHead)) {
      keys.insert(*predicate_key(node->term));
    }
  }
  return keys;
}

}  // namespace

Diagram build_diagram(const Program& p, const std::vector<Term>& query, TextMetrics metrics,
                      LayoutConstants constants) {
  if (query.empty()) throw PreconditionError("build_diagram: query must not be empty");
  Program db = p;
  ClauseId qid = add_query_clause(db, query);
  Diagram d(metrics, constants);

  DiagramNode root;
  root.kind = NodeKind::Root;
  root.label = std::string(kQueryHead);
  root.term = Term::atom(std::string(kQueryHead));
  root.clause = qid;
  d.insert(root);

  Builder builder(db, d);
  std::set<PredicateKey> ancestors{*predicate_key(root.term)};
  NodeAddress clause_address = NodeAddress{}.child(Segment::alt(qid));
  std::vector<NodeAddress> goals;
  for (std::size_t i = 0; i < query.size(); ++i) {
    NodeAddress g = clause_address.child(Segment::body(static_cast<std::uint32_t>(i)));
    builder.expand_goal(g, query[i], ancestors);
    goals.push_back(g);
  }
  d.find(NodeAddress{})->horizontal = std::move(goals);
  return d;
}

Diagram layout(Diagram d) {
  if (!d.empty()) Layout(d).run();
  return d;
}

PatchResult apply_patch(const Diagram& d, const Program& database, const TraceEvent& change) {
  PatchResult out{d, {}};
  if (!is_db_event(change.kind) || !change.clause_id) return out;
  ClauseId id = *change.clause_id;
  std::vector<const DiagramNode*> order = d.preorder();

  if (change.kind == EventKind::DbRetract) {
    for (const DiagramNode* n : order) {
      if (n->kind == NodeKind::ClauseHead && n->clause == id && !n->retracted) {
        out.diagram.find(n->address)->retracted = true;
        out.patch.crossed.push_back(n->address);
      }
    }
    return out;
  }

  const Clause& clause = database.clause(id);
  PredicateKey key = clause.key();
  Builder builder(database, out.diagram);
  std::vector<NodeAddress> targets;
  for (const DiagramNode* n : order) {
    if (n->kind != NodeKind::UserGoal || predicate_key(n->term) != key) continue;
    NodeAddress alt = n->address.child(Segment::alt(id));
    if (d.find(alt) != nullptr) continue;
    if (builder.head_unifies(n->term, clause.head)) targets.push_back(n->address);
  }
  if (targets.empty()) return out;

  for (const NodeAddress& target : targets) {
    std::set<PredicateKey> ancestors = ancestor_keys(out.diagram, target);
    ancestors.insert(key);
    NodeAddress alt = target.child(Segment::alt(id));
    builder.expand_clause(alt, clause, ancestors);
    auto& vertical = out.diagram.find(target)->vertical;
    if (change.kind == EventKind::DbAssertA) {
      vertical.insert(vertical.begin(), alt);
    } else {
      vertical.push_back(alt);
    }
  }
  out.patch.added = builder.added();

  out.diagram = layout(std::move(out.diagram));
  for (const DiagramNode* n : order) {
    const DiagramNode& now = out.diagram.at(n->address);
    if (now.x != n->x || now.y != n->y) out.patch.moved.push_back(n->address);
  }
  return out;
}

}  // namespace logichart
