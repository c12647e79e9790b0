#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "logichart/diagram.hpp"
#include "logichart/session.hpp"

namespace logichart {

enum class OutputFormat { Json, Svg, SvgFrames };

struct RunConfig {
  std::filesystem::path program;
  std::string query;
  OutputFormat format = OutputFormat::Json;
  // File for json/svg (standard output when empty), directory for svg-frames.
  std::filesystem::path out;
  TextMetrics metrics;
  LayoutConstants constants;
  bool all_solutions = false;
  // Machine events before the run is abandoned.
  std::size_t max_events = kDefaultRunBudget;
};

// Exit codes.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line: `run ...` or `serve ...`.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace logichart
