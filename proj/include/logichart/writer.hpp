#pragma once

#include <string>

#include "logichart/term.hpp"

namespace logichart {

struct FormatOptions {
  // Quote atoms that would not re-read as themselves.
  bool quoted = true;
  // Print variables by their source name ("_" for anonymous ones). When
  // false, every variable prints as _G<id>.
  bool source_names = true;
};

// Canonical text: bracketed lists, infix operators from the fixed table, no
// spaces except where needed to keep tokens apart.
std::string format_term(const Term& t, bool quoted = true);
std::string format_term(const Term& t, const FormatOptions& options);

// Writes a clause as `Head:-B1,...,Bn` (or just `Head`).
std::string format_clause(const Term& head, const std::vector<Term>& body,
                          const FormatOptions& options = {});

}  // namespace logichart
