#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logichart/serialize.hpp"
#include "logichart/session.hpp"

namespace logichart {

// Request side of the session protocol. One handler serves one client and
// owns at most one session; calls must not overlap.
//
//   {"kind":"LoadProgram","text":"..."}    -> Ack | Error
//   {"kind":"SetQuery","text":"..."}       -> DiagramFull | Error
//   {"kind":"Step"} / {"kind":"Run"}       -> events
//   {"kind":"AnswerBacktrack","more":b}    -> events
//   {"kind":"GetDiagram"}                  -> DiagramFull, NodeState...
//   {"kind":"Reset"}                       -> DiagramFull
class ProtocolHandler {
 public:
  explicit ProtocolHandler(TextMetrics metrics = {}, LayoutConstants constants = {})
      : metrics_(metrics), constants_(constants) {}

  // Never empty.
  std::vector<json> handle(const json& request);
  // Parses one request; malformed JSON yields an Error response.
  std::vector<json> handle_text(std::string_view request);

  const std::optional<Session>& session() const { return session_; }

 private:
  std::vector<json> dispatch(const json& request);
  std::vector<json> create();
  Session& require_session();

  TextMetrics metrics_;
  LayoutConstants constants_;
  std::optional<std::string> program_;
  std::optional<std::string> query_;
  std::optional<Session> session_;
};

json error_message(std::string_view text);

// `Content-Length: N\r\n\r\n` followed by N bytes of JSON. Returns nullopt
// at a clean end of input; throws std::runtime_error on a broken header.
std::optional<std::string> read_frame(std::istream& in);
void write_frame(std::ostream& out, std::string_view payload);

// Serves requests from in until end of input.
void serve_stream(std::istream& in, std::ostream& out, ProtocolHandler& handler);

}  // namespace logichart
