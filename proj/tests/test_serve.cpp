#include <doctest.h>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <filesystem>
#include <fstream>
#include <thread>

#include "logichart/serialize.hpp"
#include "logichart/server.hpp"
#include "support/corpus.hpp"

using namespace logichart;
namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

// Server on an ephemeral port, running on its own thread.
class Running {
 public:
  explicit Running(ServerOptions o = {}) {
    o.port = 0;
    o.threads = 4;
    server_ = std::make_unique<Server>(std::move(o));
    thread_ = std::thread([this] { server_->run(); });
  }
  ~Running() {
    server_->stop();
    thread_.join();
  }
  std::uint16_t port() const { return server_->port(); }

 private:
  std::unique_ptr<Server> server_;
  std::thread thread_;
};

http::response<http::string_body> get(std::uint16_t port, const std::string& target) {
  asio::io_context ioc;
  tcp::socket socket(ioc);
  socket.connect({asio::ip::make_address("127.0.0.1"), port});
  http::request<http::empty_body> req{http::verb::get, target, 11};
  req.set(http::field::host, "127.0.0.1");
  http::write(socket, req);
  beast::flat_buffer buf;
  http::response<http::string_body> res;
  http::read(socket, buf, res);
  beast::error_code ec;
  socket.shutdown(tcp::socket::shutdown_both, ec);
  return res;
}

class Client {
 public:
  explicit Client(std::uint16_t port) : ws_(ioc_) {
    ws_.next_layer().connect({asio::ip::make_address("127.0.0.1"), port});
    ws_.handshake("127.0.0.1", "/session");
  }
  ~Client() {
    beast::error_code ec;
    ws_.close(websocket::close_code::normal, ec);
  }
  void send(const json& request) { ws_.write(asio::buffer(request.dump())); }
  json receive() {
    beast::flat_buffer buf;
    ws_.read(buf);
    return json::parse(beast::buffers_to_string(buf.data()));
  }
  // Sends request followed by an unknown request whose Error marks the end
  // of the replies; returns the replies.
  std::vector<json> request(const json& r) {
    send(r);
    send({{"kind", "Fence"}});
    std::vector<json> out;
    for (;;) {
      json m = receive();
      if (m["kind"] == "Error" && m["message"].get<std::string>().find("Fence") != std::string::npos) {
        return out;
      }
      out.push_back(std::move(m));
    }
  }
  // Reads until a message of the given kind arrives.
  std::vector<json> until(const std::string& kind) {
    std::vector<json> out;
    do {
      out.push_back(receive());
    } while (out.back()["kind"] != kind && out.back()["kind"] != "Error");
    return out;
  }

 private:
  asio::io_context ioc_;
  websocket::stream<tcp::socket> ws_;
};

}  // namespace

TEST_CASE("healthz answers 200") {
  Running s;
  auto res = get(s.port(), "/healthz");
  CHECK(res.result() == http::status::ok);
  CHECK(res.body() == "ok\n");
}

TEST_CASE("unknown paths are 404 and parent paths are refused") {
  Running s;
  CHECK(get(s.port(), "/nope/nothing.js").result() == http::status::not_found);
  CHECK(get(s.port(), "/../etc/passwd").result() != http::status::ok);
}

TEST_CASE("index page is served without assets") {
  Running s;
  auto res = get(s.port(), "/");
  CHECK(res.result() == http::status::ok);
  CHECK(res.body().find("<html") != std::string::npos);
}

TEST_CASE("assets directory is served") {
  auto dir = std::filesystem::temp_directory_path() / "logichart_assets";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "index.html") << "<html>custom</html>";
  std::ofstream(dir / "app.js") << "console.log(1);";
  ServerOptions o;
  o.assets = dir;
  Running s(o);
  auto index = get(s.port(), "/");
  CHECK(index.body() == "<html>custom</html>");
  auto js = get(s.port(), "/app.js");
  CHECK(js.result() == http::status::ok);
  CHECK(js.body() == "console.log(1);");
  CHECK(std::string(js[http::field::content_type]).find("javascript") != std::string::npos);
}

TEST_CASE("websocket load and query gives the diagram") {
  Running s;
  Client c(s.port());
  c.send({{"kind", "LoadProgram"}, {"text", testing::corpus_case("fig1.pl").program}});
  CHECK(c.receive()["kind"] == "Ack");
  c.send({{"kind", "SetQuery"}, {"text", "test(X,Y,Z)."}});
  json full = c.receive();
  REQUIRE(full["kind"] == "DiagramFull");
  CHECK(full["diagram"]["nodes"].size() == 12);
  c.send({{"kind", "Step"}});
  json first = c.receive();
  CHECK(first["kind"] == "NodeState");
  CHECK(first["state"] == "Called");
  CHECK(c.receive()["kind"] == "Bindings");
  c.send({{"kind", "Fly"}});
  CHECK(c.receive()["kind"] == "Error");
  c.send({{"kind", "Run"}});
  auto events = c.until("PromptBacktrack");
  CHECK(events.back()["kind"] == "PromptBacktrack");
  c.send({{"kind", "AnswerBacktrack"}, {"more", false}});
  auto done = c.until("Done");
  CHECK(done.back()["success"] == true);
  CHECK(done.back()["solutions"] == 1);
}

TEST_CASE("concurrent sessions stay ordered") {
  Running s;
  auto drive = [port = s.port()](const std::string& name, const std::string& query,
                                 std::vector<json>& log) {
    Client c(port);
    c.send({{"kind", "LoadProgram"}, {"text", testing::corpus_case(name).program}});
    log.push_back(c.receive());
    c.send({{"kind", "SetQuery"}, {"text", query}});
    log.push_back(c.receive());
    for (int i = 0; i < 400; ++i) {
      auto batch = c.request({{"kind", "Step"}});
      log.insert(log.end(), batch.begin(), batch.end());
      if (batch.empty() || batch.back()["kind"] == "Error") break;
    }
  };
  std::vector<json> a_log, b_log;
  std::thread a(drive, "cut.pl", "f.", std::ref(a_log));
  std::thread b(drive, "hanoi.pl", testing::corpus_case("hanoi.pl").query, std::ref(b_log));
  a.join();
  b.join();

  // Each stream matches what a private handler produces for the same requests.
  auto expected = [](const std::string& name, const std::string& query, std::size_t n) {
    auto session = Session::create(testing::corpus_case(name).program, query);
    std::vector<json> out;
    while (out.size() < n && session.status() == MachineStatus::Running) {
      for (const Message& m : session.step()) out.push_back(to_json(m));
    }
    return out;
  };
  for (auto* log : {&a_log, &b_log}) {
    REQUIRE(log->size() > 2);
    CHECK((*log)[0]["kind"] == "Ack");
    CHECK((*log)[1]["kind"] == "DiagramFull");
  }
  auto check_stream = [&](const std::vector<json>& log, const std::string& name,
                          const std::string& query) {
    std::vector<json> events(log.begin() + 2, log.end());
    while (!events.empty() && events.back()["kind"] == "Error") events.pop_back();
    auto want = expected(name, query, events.size());
    REQUIRE(want.size() >= events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
      INFO(name << " event " << i);
      CHECK(events[i] == want[i]);
    }
  };
  check_stream(a_log, "cut.pl", "f.");
  check_stream(b_log, "hanoi.pl", testing::corpus_case("hanoi.pl").query);
}

TEST_CASE("a taken port is refused") {
  Running s;
  ServerOptions o;
  o.port = s.port();
  CHECK_THROWS_AS(Server{o}, std::system_error);
}

TEST_CASE("stop ends run") {
  ServerOptions o;
  o.port = 0;
  Server server(o);
  std::thread t([&] { server.run(); });
  server.stop();
  t.join();
  CHECK(true);
}
