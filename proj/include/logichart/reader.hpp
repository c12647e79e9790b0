#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logichart/program.hpp"
#include "logichart/term.hpp"

namespace logichart {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }
  // Message without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

// Reads a sequence of `.`-terminated clauses. Variable ids are unique across
// the whole program and deterministic for identical input.
Program parse_program(std::string_view source);

// Reads `?- G1, ..., Gn.` or `G1, ..., Gn.`. Variable ids start at
// first_var_id.
std::vector<Term> parse_query(std::string_view source, VarId first_var_id = 1);

// Reads a single `.`-terminated term (tests and tools).
Term parse_term(std::string_view source, VarId first_var_id = 1);

}  // namespace logichart
