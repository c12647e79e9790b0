#include "logichart/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "logichart/errors.hpp"
#include "logichart/protocol.hpp"
#include "logichart/reader.hpp"
#include "logichart/server.hpp"
#include "logichart/svg.hpp"

namespace logichart {

namespace {

std::optional<std::string> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  return static_cast<bool>(f.flush());
}

std::string frame_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%05zu.svg", i);
  return buf;
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto source = slurp(config.program);
  if (!source) {
    err << "logichart: cannot read program file " << config.program << "\n";
    return kExitUsage;
  }
  std::optional<Session> session;
  try {
    session = Session::create(*source, config.query, config.metrics, config.constants);
  } catch (const ParseError& e) {
    err << "logichart: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "logichart: " << e.what() << "\n";
    return kExitUsage;
  }
  if (config.format == OutputFormat::SvgFrames) {
    std::error_code ec;
    if (config.out.empty()) {
      err << "logichart: --format svg-frames needs --out DIR\n";
      return kExitUsage;
    }
    std::filesystem::create_directories(config.out, ec);
    if (ec) {
      err << "logichart: cannot create " << config.out << ": " << ec.message() << "\n";
      return kExitUsage;
    }
  }

  Session& s = *session;
  std::vector<Message> messages{s.diagram_full()};
  std::vector<std::string> frames{render_svg(s.diagram(), s.states())};
  bool budget_hit = false;
  for (std::size_t n = 0; s.status() != MachineStatus::Done; ++n) {
    if (n == config.max_events) {
      budget_hit = true;
      break;
    }
    std::vector<Message> batch = s.status() == MachineStatus::Running
                                     ? s.step()
                                     : s.answer_backtrack(config.all_solutions);
    messages.insert(messages.end(), batch.begin(), batch.end());
    if (config.format == OutputFormat::SvgFrames) {
      frames.push_back(render_svg(s.diagram(), s.states()));
    }
  }
  if (budget_hit) {
    Message m;
    m.kind = MessageKind::Error;
    m.message = "stopped after " + std::to_string(config.max_events) + " events";
    messages.push_back(m);
    err << "logichart: " << m.message << "\n";
  }
  for (const Message& m : messages) {
    if (m.kind == MessageKind::Error && !budget_hit) err << "logichart: " << m.message << "\n";
  }

  std::string text;
  switch (config.format) {
    case OutputFormat::Json: {
      json log = json::array();
      for (const Message& m : messages) log.push_back(to_json(m));
      text = log.dump(2) + "\n";
      break;
    }
    case OutputFormat::Svg:
      text = render_svg(s.diagram(), s.states());
      break;
    case OutputFormat::SvgFrames:
      for (std::size_t i = 0; i < frames.size(); ++i) {
        if (!write_file(config.out / frame_name(i), frames[i])) {
          err << "logichart: cannot write " << (config.out / frame_name(i)) << "\n";
          return kExitUsage;
        }
      }
      break;
  }
  if (config.format != OutputFormat::SvgFrames) {
    if (config.out.empty()) {
      out << text;
      out.flush();
    } else if (!write_file(config.out, text)) {
      err << "logichart: cannot write " << config.out << "\n";
      return kExitUsage;
    }
  }
  return s.machine().solutions() > 0 ? kExitSuccess : kExitFailure;
}

namespace {

void add_layout_flags(CLI::App* cmd, TextMetrics& metrics, LayoutConstants& constants) {
  cmd->add_option("--gap-x", constants.gap_x, "horizontal gap between siblings (px)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--gap-y", constants.gap_y, "vertical gap between alternatives (px)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--char-width", metrics.char_width, "label character width (px)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logichart tracer: Prolog execution drawn as a Logichart diagram"};
  app.require_subcommand(1);

  RunConfig run;
  CLI::App* run_cmd = app.add_subcommand("run", "trace a query and write JSON or SVG");
  run_cmd->add_option("--program", run.program, "Prolog source file")->required();
  run_cmd->add_option("--query", run.query, "query, e.g. \"f.\"")->required();
  const std::map<std::string, OutputFormat> formats{
      {"json", OutputFormat::Json}, {"svg", OutputFormat::Svg},
      {"svg-frames", OutputFormat::SvgFrames}};
  run_cmd->add_option("--format", run.format, "json | svg | svg-frames")
      ->transform(CLI::CheckedTransformer(formats));
  run_cmd->add_option("--out", run.out, "output file, or directory for svg-frames");
  run_cmd->add_flag("--all-solutions", run.all_solutions,
                    "answer yes at every backtracking prompt");
  run_cmd->add_option("--max-events", run.max_events, "give up after this many machine events")
      ->check(CLI::PositiveNumber);
  add_layout_flags(run_cmd, run.metrics, run.constants);

  ServerOptions serve;
  bool stdio = false;
  CLI::App* serve_cmd = app.add_subcommand("serve", "host the session protocol");
  serve_cmd->add_option("--port", serve.port, "TCP port")
      ->envname("LOGICHART_PORT")
      ->capture_default_str();
  serve_cmd->add_option("--address", serve.address, "bind address")->capture_default_str();
  serve_cmd->add_option("--assets", serve.assets, "directory with the UI files");
  serve_cmd->add_flag("--stdio", stdio, "speak the protocol on standard input/output");
  add_layout_flags(serve_cmd, serve.metrics, serve.constants);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitSuccess : kExitUsage;
  }

  if (*run_cmd) return run_command(run, out, err);

  if (stdio) {
    ProtocolHandler handler(serve.metrics, serve.constants);
    try {
      serve_stream(std::cin, out, handler);
    } catch (const std::exception& e) {
      err << "logichart: " << e.what() << "\n";
      return kExitUsage;
    }
    return kExitSuccess;
  }
  serve.handle_signals = true;
  try {
    Server server(serve);
    err << "logichart: listening on http://" << serve.address << ":" << server.port() << "\n";
    server.run();
  } catch (const std::system_error& e) {
    err << "logichart: cannot listen on " << serve.address << ":" << serve.port << ": "
        << e.code().message() << "\n";
    return kExitUsage;
  }
  return kExitSuccess;
}

}  // namespace logichart
