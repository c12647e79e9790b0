#include "logichart/protocol.hpp"

#include <istream>
#include <ostream>

#include "logichart/errors.hpp"
#include "logichart/reader.hpp"

namespace logichart {

json error_message(std::string_view text) {
  Message m;
  m.kind = MessageKind::Error;
  m.message = std::string(text);
  return to_json(m);
}

namespace {

std::vector<json> encode(const std::vector<Message>& messages) {
  std::vector<json> out;
  out.reserve(messages.size());
  for (const Message& m : messages) out.push_back(to_json(m));
  return out;
}

std::string text_field(const json& request) {
  auto it = request.find("text");
  if (it == request.end() || !it->is_string()) {
    throw std::invalid_argument("request needs a string field 'text'");
  }
  return it->get<std::string>();
}

}  // namespace

Session& ProtocolHandler::require_session() {
  if (!session_) throw PreconditionError("no session: send LoadProgram and SetQuery first");
  return *session_;
}

std::vector<json> ProtocolHandler::create() {
  session_.reset();
  session_ = Session::create(*program_, *query_, metrics_, constants_);
  return {to_json(session_->diagram_full())};
}

std::vector<json> ProtocolHandler::dispatch(const json& request) {
  if (!request.is_object() || !request.contains("kind") || !request["kind"].is_string()) {
    return {error_message("request must be an object with a string field 'kind'")};
  }
  const std::string kind = request["kind"].get<std::string>();

  if (kind == "LoadProgram") {
    std::string text = text_field(request);
    parse_program(text);
    program_ = std::move(text);
    query_.reset();
    session_.reset();
    Message ack;
    ack.text = "program loaded";
    return {to_json(ack)};
  }
  if (kind == "SetQuery") {
    if (!program_) throw PreconditionError("no program: send LoadProgram first");
    std::string text = text_field(request);
    parse_query(text);
    query_ = std::move(text);
    return create();
  }
  if (kind == "Step") return encode(require_session().step());
  if (kind == "Run") return encode(require_session().run());
  if (kind == "AnswerBacktrack") {
    auto it = request.find("more");
    if (it == request.end() || !it->is_boolean()) {
      throw std::invalid_argument("AnswerBacktrack needs a boolean field 'more'");
    }
    return encode(require_session().answer_backtrack(it->get<bool>()));
  }
  if (kind == "GetDiagram") {
    Session& s = require_session();
    std::vector<json> out{to_json(s.diagram_full())};
    for (const auto& [address, state] : s.states()) {
      if (state == VisualState::Untouched) continue;
      Message m;
      m.kind = MessageKind::NodeState;
      m.address = address;
      m.state = state;
      out.push_back(to_json(m));
    }
    return out;
  }
  if (kind == "Reset") {
    require_session();
    return create();
  }
  return {error_message("unknown request kind '" + kind + "'")};
}

std::vector<json> ProtocolHandler::handle(const json& request) {
  try {
    return dispatch(request);
  } catch (const std::exception& e) {
    return {error_message(e.what())};
  }
}

std::vector<json> ProtocolHandler::handle_text(std::string_view request) {
  json parsed = json::parse(request, nullptr, false);
  if (parsed.is_discarded()) return {error_message("malformed JSON request")};
  return handle(parsed);
}

std::optional<std::string> read_frame(std::istream& in) {
  std::optional<std::size_t> length;
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    any = true;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!length) throw std::runtime_error("frame header without Content-Length");
      std::string payload(*length, '\0');
      in.read(payload.data(), static_cast<std::streamsize>(*length));
      if (static_cast<std::size_t>(in.gcount()) != *length) {
        throw std::runtime_error("truncated frame");
      }
      return payload;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::runtime_error("bad frame header '" + line + "'");
    if (line.substr(0, colon) == "Content-Length") {
      try {
        length = std::stoul(line.substr(colon + 1));
      } catch (const std::exception&) {
        throw std::runtime_error("bad Content-Length '" + line + "'");
      }
    }
  }
  if (any) throw std::runtime_error("input ended inside a frame header");
  return std::nullopt;
}

void write_frame(std::ostream& out, std::string_view payload) {
  out << "Content-Length: " << payload.size() << "\r\n\r\n" << payload;
  out.flush();
}

void serve_stream(std::istream& in, std::ostream& out, ProtocolHandler& handler) {
  while (auto frame = read_frame(in)) {
    for (const json& response : handler.handle_text(*frame)) write_frame(out, response.dump());
  }
}

}  // namespace logichart
