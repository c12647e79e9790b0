#pragma once

#include <string>
#include <vector>

#include "logichart/diagram.hpp"
#include "logichart/machine.hpp"
#include "logichart/program.hpp"

namespace testing {

// Geometry checks computed from node boxes alone: box sizes, root origin,
// no overlap, alignment, order and exact gaps. Returns one line per
// violation.
std::vector<std::string> check_layout(const logichart::Diagram& d);

// Node kinds, child lists and addresses against the program: vertical
// children are exactly the unifiable clauses in database order, builtins
// and recursion markers are where they should be.
std::vector<std::string> check_structure(const logichart::Diagram& d,
                                         const logichart::Program& p,
                                         const std::vector<logichart::Term>& query);

// Per address: Call opens an invocation, Exit/Fail close it, Redo reopens
// an exited one.
std::vector<std::string> check_ports(const std::vector<logichart::TraceEvent>& events);

// After a CutPrune listing G.alt(k), nothing under G.alt(k) runs until G
// is called again.
std::vector<std::string> check_cut_scoping(const std::vector<logichart::TraceEvent>& events);

}  // namespace testing
