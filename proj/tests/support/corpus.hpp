#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logichart/machine.hpp"

namespace testing {

struct Expected {
  std::string output;
  bool success = false;
  std::map<std::string, std::string> bindings;
};

struct CorpusCase {
  std::string name;
  std::string program;
  std::string query;
  std::optional<Expected> expected;
};

std::filesystem::path corpus_dir();
std::string read_text(const std::filesystem::path& p);

// Every *.pl in the corpus with its `% query:` line and the frozen
// reference result, sorted by name.
std::vector<CorpusCase> load_corpus();
CorpusCase corpus_case(const std::string& name);

// Renames variable tokens (_G12, _7, ...) to _1, _2, ... in order of first
// appearance, so texts compare modulo variable naming.
std::string normalize_vars(const std::string& text);

struct FirstAnswer {
  std::string output;
  bool success = false;
  std::map<std::string, std::string> bindings;
  std::string error;
  std::vector<logichart::TraceEvent> events;
};

// Runs to the first solution (answering "no") or to failure.
FirstAnswer first_answer(const std::string& program, const std::string& query,
                         std::size_t budget = 2'000'000);

}  // namespace testing
