#include <doctest.h>

#include <algorithm>
#include <set>

#include "logichart/diagram.hpp"
#include "logichart/machine.hpp"
#include "logichart/reader.hpp"
#include "logichart/svg.hpp"
#include "support/corpus.hpp"
#include "support/generator.hpp"
#include "support/invariants.hpp"

using namespace logichart;

namespace {

struct Built {
  Program program;
  std::vector<Term> query;
  Diagram diagram;
};

Built build(const std::string& src, const std::string& q, LayoutConstants k = {}) {
  Built b;
  b.program = parse_program(src);
  b.query = parse_query(q, b.program.max_var_id() + 1);
  b.diagram = layout(build_diagram(b.program, b.query, {}, k));
  return b;
}

Built build_case(const std::string& name) {
  auto c = testing::corpus_case(name);
  return build(c.program, c.query);
}

// "a6.b0.a1" -> address
NodeAddress addr(const std::string& text) {
  std::vector<Segment> segs;
  std::size_t i = 0;
  while (i < text.size()) {
    char k = text[i++];
    std::size_t end = text.find('.', i);
    if (end == std::string::npos) end = text.size();
    auto v = static_cast<std::uint32_t>(std::stoul(text.substr(i, end - i)));
    segs.push_back(k == 'a' ? Segment::alt(ClauseId{v}) : Segment::body(v));
    i = end + 1;
  }
  return NodeAddress(segs);
}

std::size_t count_kind(const Diagram& d, NodeKind k) {
  std::size_t n = 0;
  for (const auto& [a, node] : d.nodes()) n += node.kind == k;
  return n;
}

// Markup of the node group with this address.
std::string node_group(const std::string& svg, const std::string& address) {
  auto start = svg.find("data-address=\"" + address + "\"");
  if (start == std::string::npos) return {};
  return svg.substr(start, svg.find("</g>", start) - start);
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

// Runs m until the first Db* event and returns it.
TraceEvent first_db_event(Machine& m) {
  while (m.status() == MachineStatus::Running) {
    TraceEvent e = m.step();
    if (e.kind == EventKind::DbAssertA || e.kind == EventKind::DbAssertZ ||
        e.kind == EventKind::DbRetract) {
      return e;
    }
  }
  throw std::runtime_error("no database change");
}

void require_clean(const Built& b) {
  auto layout_errs = testing::check_layout(b.diagram);
  auto structure_errs = testing::check_structure(b.diagram, b.program, b.query);
  for (const auto& e : layout_errs) INFO(e);
  for (const auto& e : structure_errs) INFO(e);
  CHECK(layout_errs.empty());
  CHECK(structure_errs.empty());
}

}  // namespace

TEST_CASE("fig1 diagram has twelve nodes") {
  Built b = build_case("fig1.pl");
  const Diagram& d = b.diagram;
  CHECK(d.size() == 12);
  CHECK(count_kind(d, NodeKind::Root) == 1);
  CHECK(count_kind(d, NodeKind::ClauseHead) == 4);
  CHECK(count_kind(d, NodeKind::UserGoal) == 2);
  CHECK(count_kind(d, NodeKind::BuiltinGoal) == 4);
  CHECK(count_kind(d, NodeKind::RecursiveGoal) == 1);

  const DiagramNode& test = d.at(addr("a5.b0"));
  CHECK(test.kind == NodeKind::UserGoal);
  CHECK(test.label == "test(X,Y,Z)");
  REQUIRE(test.vertical.size() == 2);
  const DiagramNode& c1 = d.at(test.vertical[0]);
  CHECK(c1.clause == ClauseId{1});
  REQUIRE(c1.horizontal.size() == 3);
  CHECK(d.at(c1.horizontal[0]).kind == NodeKind::UserGoal);
  CHECK(d.at(c1.horizontal[1]).label == "write((X,Y,Z))");
  CHECK(d.at(c1.horizontal[2]).label == "nl");
  const DiagramNode& c2 = d.at(test.vertical[1]);
  CHECK(c2.label == "test(_,_,_)");
  REQUIRE(c2.horizontal.size() == 2);
  CHECK(d.at(c2.horizontal[0]).label == "write(end)");

  const DiagramNode& rec = d.at(addr("a5.b0.a1.b0.a4.b0"));
  CHECK(rec.kind == NodeKind::RecursiveGoal);
  CHECK(rec.label == "appendList(L1,L2,List)");
  require_clean(b);
}

TEST_CASE("fig1 alignment") {
  const Diagram d = build_case("fig1.pl").diagram;
  const DiagramNode& test = d.at(addr("a5.b0"));
  for (const auto& alt : test.vertical) CHECK(d.at(alt).x == test.x);
  const DiagramNode& head = d.at(addr("a5.b0.a1"));
  for (const auto& g : head.horizontal) CHECK(d.at(g).y == head.y);
  const DiagramNode& app = d.at(addr("a5.b0.a1.b0"));
  CHECK(d.at(app.vertical[0]).y < d.at(app.vertical[1]).y);
  CHECK(d.at(app.vertical[0]).x == app.x);
}

TEST_CASE("layout numbers from the root rule") {
  LayoutConstants k;
  k.root_x = 0;
  k.root_y = 0;
  Built b = build("p(a).", "p(X).", k);
  const Diagram& d = b.diagram;
  CHECK(d.root().width == 128);
  CHECK(d.root().height == 24);
  CHECK(d.root().x == 0);
  CHECK(d.root().y == 0);
  const DiagramNode& goal = d.at(d.root().horizontal.at(0));
  CHECK(goal.x == 148);
  CHECK(goal.y == 0);
  const DiagramNode& fact = d.at(goal.vertical.at(0));
  CHECK(fact.x == goal.x);
  CHECK(fact.y == goal.y + 36);
}

TEST_CASE("label width model") {
  TextMetrics m;
  CHECK(m.width_of("prolog_program") == 128);
  CHECK(m.width_of("nl") == 32);
  CHECK(m.width_of("é") == 24);
  CHECK(m.width_of("") > 0);
}

TEST_CASE("builtin-only query stays on one row") {
  Built b = build("", "write(hi), nl, X = 1.");
  const Diagram& d = b.diagram;
  CHECK(d.size() == 4);
  for (const auto& [a, n] : d.nodes()) CHECK(n.y == d.constants().root_y);
  auto kids = d.root().horizontal;
  REQUIRE(kids.size() == 3);
  int x = d.root().x + d.root().width + 20;
  for (const auto& a : kids) {
    CHECK(d.at(a).x == x);
    CHECK(d.at(a).kind == NodeKind::BuiltinGoal);
    x += d.at(a).width + 20;
  }
}

TEST_CASE("cut program shape") {
  Built b = build_case("cut.pl");
  const Diagram& d = b.diagram;
  const DiagramNode& f = d.at(addr("a6.b0"));
  REQUIRE(f.vertical.size() == 2);
  const DiagramNode& first = d.at(f.vertical[0]);
  REQUIRE(first.horizontal.size() == 4);
  std::vector<NodeKind> kinds;
  std::vector<std::string> labels;
  for (const auto& a : first.horizontal) {
    kinds.push_back(d.at(a).kind);
    labels.push_back(d.at(a).label);
  }
  CHECK(kinds == std::vector<NodeKind>{NodeKind::UserGoal, NodeKind::BuiltinGoal,
                                       NodeKind::UserGoal, NodeKind::BuiltinGoal});
  CHECK(labels == std::vector<std::string>{"g", "!", "h", "fail"});
  CHECK(d.at(first.horizontal[0]).vertical.size() == 2);
  CHECK(d.at(f.vertical[1]).horizontal.empty());
  require_clean(b);
}

TEST_CASE("undefined predicate has no alternatives") {
  Built b = build("p(a).", "nothere(X).");
  const DiagramNode& g = b.diagram.at(b.diagram.root().horizontal.at(0));
  CHECK(g.kind == NodeKind::UserGoal);
  CHECK(g.vertical.empty());
}

TEST_CASE("only unifiable heads become alternatives") {
  Built b = build("p(a). p(b). p(X) :- q(X). q(1).", "p(b).");
  const DiagramNode& g = b.diagram.at(b.diagram.root().horizontal.at(0));
  REQUIRE(g.vertical.size() == 2);
  CHECK(b.diagram.at(g.vertical[0]).clause == ClauseId{2});
  CHECK(b.diagram.at(g.vertical[1]).clause == ClauseId{3});
  require_clean(b);
}

TEST_CASE("mutual recursion is cut off") {
  Built b = build("p :- q. q :- p. q.", "p.");
  const Diagram& d = b.diagram;
  // p -> q -> (p marker), q fact
  CHECK(count_kind(d, NodeKind::RecursiveGoal) == 1);
  CHECK(d.at(addr("a4.b0.a1.b0.a2.b0")).kind == NodeKind::RecursiveGoal);
  require_clean(b);
}

TEST_CASE("assertz patch adds a subtree under each caller") {
  auto c = testing::corpus_case("assertz.pl");
  Built b = build(c.program, c.query);
  Machine m(b.program, b.query);
  TraceEvent change = first_db_event(m);
  REQUIRE(change.kind == EventKind::DbAssertZ);
  CHECK(change.clause_text == "g(a):-k(a)");
  REQUIRE(change.clause_id.has_value());
  const ClauseId id = *change.clause_id;

  PatchResult r = apply_patch(b.diagram, m.database(), change);
  const Diagram& d = r.diagram;
  CHECK(r.patch.crossed.empty());
  for (const char* goal : {"a5.b0.a1.b0", "a5.b0.a1.b2"}) {
    INFO(goal);
    const DiagramNode& g = d.at(addr(goal));
    REQUIRE(g.vertical.size() == 2);
    const DiagramNode& fresh = d.at(g.vertical.back());
    CHECK(fresh.clause == id);
    CHECK(fresh.label == "g(a)");
    REQUIRE(fresh.horizontal.size() == 1);
    const DiagramNode& k = d.at(fresh.horizontal[0]);
    CHECK(k.label == "k(a)");
    CHECK(k.kind == NodeKind::UserGoal);
    CHECK(k.vertical.size() == 1);
    CHECK(std::find(r.patch.added.begin(), r.patch.added.end(), fresh.address) !=
          r.patch.added.end());
  }
  CHECK(d.size() == b.diagram.size() + 2 * 4);
  auto errs = testing::check_layout(d);
  CHECK(errs.empty());
  // the h goal sits to the right of the first g and must have moved
  CHECK(std::find(r.patch.moved.begin(), r.patch.moved.end(), addr("a5.b0.a1.b1")) !=
        r.patch.moved.end());
}

TEST_CASE("asserta patch inserts at the top") {
  auto c = testing::corpus_case("asserta.pl");
  Built b = build(c.program, c.query);
  Machine m(b.program, b.query);
  TraceEvent change = first_db_event(m);
  REQUIRE(change.kind == EventKind::DbAssertA);
  PatchResult r = apply_patch(b.diagram, m.database(), change);
  const DiagramNode& colour = r.diagram.at(addr("a3.b1"));
  REQUIRE(colour.vertical.size() == 2);
  CHECK(r.diagram.at(colour.vertical[0]).label == "colour(red)");
  CHECK(r.diagram.at(colour.vertical[1]).label == "colour(green)");
  CHECK(r.diagram.at(colour.vertical[0]).y < r.diagram.at(colour.vertical[1]).y);
  CHECK(testing::check_layout(r.diagram).empty());
}

TEST_CASE("retract patch crosses out without moving anything") {
  auto c = testing::corpus_case("retract.pl");
  Built b = build(c.program, c.query);
  Machine m(b.program, b.query);
  TraceEvent change = first_db_event(m);
  REQUIRE(change.kind == EventKind::DbRetract);
  CHECK(change.clause_id == ClauseId{2});
  PatchResult r = apply_patch(b.diagram, m.database(), change);
  CHECK(r.patch.added.empty());
  CHECK(r.patch.moved.empty());
  std::vector<NodeAddress> expect{addr("a5.b0.a1.b0.a2"), addr("a5.b0.a1.b2.a2")};
  CHECK(r.patch.crossed == expect);
  for (const auto& a : expect) CHECK(r.diagram.at(a).retracted);
  for (const auto& [a, n] : b.diagram.nodes()) {
    const DiagramNode& after = r.diagram.at(a);
    CHECK(after.x == n.x);
    CHECK(after.y == n.y);
    CHECK(after.width == n.width);
  }
}

TEST_CASE("assert nobody calls leaves the diagram alone") {
  Built b = build("p :- assertz(other(1)). other(0).", "p.");
  Machine m(b.program, b.query);
  TraceEvent change = first_db_event(m);
  PatchResult r = apply_patch(b.diagram, m.database(), change);
  CHECK(r.patch.empty());
  CHECK(r.diagram.size() == b.diagram.size());
}

TEST_CASE("svg with no states is all white") {
  const Diagram d = build_case("fig1.pl").diagram;
  std::string svg = render_svg(d);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(count(svg, "<g class=\"node ") == 12);
  CHECK(count(svg, "fill=\"#ffffff\"") >= 12);
  for (const char* c : {"#66cc66", "#6699ff", "#ff6666", "#bbbbbb"}) CHECK(count(svg, c) == 0);
}

TEST_CASE("svg colours the called test node") {
  const Diagram d = build_case("fig1.pl").diagram;
  StateMap states{{addr("a5.b0"), VisualState::Called}};
  std::string svg = render_svg(d, states);
  CHECK(count(svg, "fill=\"#66cc66\"") == 1);
  std::string test_node = node_group(svg, "a5.b0");
  CHECK(test_node.find("data-state=\"Called\"") != std::string::npos);
  CHECK(test_node.find("fill=\"#66cc66\"") != std::string::npos);
  CHECK(count(svg, "data-state=\"Untouched\"") == 11);
}

TEST_CASE("svg fill colours are distinct") {
  std::set<std::string> fills;
  for (auto s : {VisualState::Untouched, VisualState::Called, VisualState::Succeeded,
                 VisualState::Failed, VisualState::Pruned}) {
    fills.insert(std::string(fill_color(s)));
  }
  CHECK(fills.size() == 5);
}

TEST_CASE("svg marks retracted clauses with a cross") {
  auto c = testing::corpus_case("retract.pl");
  Built b = build(c.program, c.query);
  Machine m(b.program, b.query);
  PatchResult r = apply_patch(b.diagram, m.database(), first_db_event(m));
  std::string svg = render_svg(r.diagram);
  CHECK(count(svg, "class=\"cross\"") == 2 * 2);
  CHECK(count(node_group(svg, "a5.b0.a1.b0.a2"), "<line class=\"cross\"") == 2);
  CHECK(count(node_group(svg, "a5.b0.a1.b0.a3"), "<line class=\"cross\"") == 0);
}

TEST_CASE("svg shapes differ by kind") {
  const Diagram d = build_case("fig1.pl").diagram;
  std::string svg = render_svg(d);
  CHECK(count(svg, "stroke-dasharray") == 1);
  CHECK(svg.find("class=\"node Root\"") != std::string::npos);
  CHECK(svg.find("class=\"node BuiltinGoal\"") != std::string::npos);
}

TEST_CASE("svg output is deterministic") {
  const Diagram d1 = build_case("fig1.pl").diagram;
  const Diagram d2 = build_case("fig1.pl").diagram;
  StateMap s{{addr("a5.b0"), VisualState::Succeeded}, {addr("a5.b0.a2"), VisualState::Pruned}};
  CHECK(render_svg(d1, s) == render_svg(d2, s));
}

TEST_CASE("corpus diagrams satisfy the layout rules") {
  for (const auto& c : testing::load_corpus()) {
    INFO(c.name);
    require_clean(build(c.program, c.query));
  }
}

TEST_CASE("random diagrams satisfy the layout rules") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = testing::random_case(seed);
    INFO("seed " << seed << "\n" << g.program << "?- " << g.query);
    require_clean(build(g.program, g.query));
  }
}

TEST_CASE("random patches keep the layout rules") {
  testing::GeneratorLimits lim;
  lim.db_update_percent = 30;
  std::size_t patched = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = testing::random_case(seed, lim);
    INFO("seed " << seed << "\n" << g.program << "?- " << g.query);
    Built b = build(g.program, g.query);
    Machine m(b.program, b.query);
    Diagram d = b.diagram;
    for (int n = 0; n < 2000 && m.status() == MachineStatus::Running; ++n) {
      TraceEvent e = m.step();
      if (e.kind != EventKind::DbAssertA && e.kind != EventKind::DbAssertZ &&
          e.kind != EventKind::DbRetract) {
        continue;
      }
      PatchResult r = apply_patch(d, m.database(), e);
      for (const auto& a : r.patch.added) CHECK(r.diagram.find(a) != nullptr);
      for (const auto& a : r.patch.crossed) CHECK(r.diagram.at(a).retracted);
      d = std::move(r.diagram);
      ++patched;
      auto errs = testing::check_layout(d);
      for (const auto& err : errs) INFO(err);
      REQUIRE(errs.empty());
    }
  }
  CHECK(patched > 20);
}
