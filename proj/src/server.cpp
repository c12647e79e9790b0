#include "logichart/server.hpp"

#include <boost/asio/co_spawn.hpp>
#include <boost/asio/detached.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/strand.hpp>
#include <boost/asio/use_awaitable.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>
#include <vector>

#include "logichart/protocol.hpp"

namespace logichart {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using asio::awaitable;
using asio::use_awaitable;

namespace {

constexpr std::string_view kPlaceholder =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>logichart</title></head>\n"
    "<body><p>logichart server. Connect a client to the WebSocket endpoint "
    "<code>/session</code>.</p></body></html>\n";

std::string_view mime_type(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  return "application/octet-stream";
}

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions o)
      : options(std::move(o)), acceptor(ioc), signals(ioc) {
    beast::error_code ec;
    auto check = [&ec](const char* what) {
      if (ec) throw std::system_error(std::error_code(ec), what);
    };
    auto address = asio::ip::make_address(options.address, ec);
    check("address");
    tcp::endpoint endpoint(address, options.port);
    acceptor.open(endpoint.protocol(), ec);
    check("open");
    acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    check("set_option");
    acceptor.bind(endpoint, ec);
    check("bind");
    acceptor.listen(asio::socket_base::max_listen_connections, ec);
    check("listen");
  }

  http::response<http::string_body> respond(const http::request<http::string_body>& req) {
    auto reply = [&](http::status status, std::string body, std::string_view type) {
      http::response<http::string_body> res{status, req.version()};
      res.set(http::field::server, "logichart");
      res.set(http::field::content_type, beast::string_view(type.data(), type.size()));
      res.keep_alive(req.keep_alive());
      res.body() = std::move(body);
      res.prepare_payload();
      return res;
    };
    if (req.method() != http::verb::get && req.method() != http::verb::head) {
      return reply(http::status::method_not_allowed, "method not allowed\n", "text/plain");
    }
    std::string target(req.target());
    if (auto q = target.find('?'); q != std::string::npos) target.resize(q);
    if (target == "/healthz") return reply(http::status::ok, "ok\n", "text/plain");
    if (target.empty() || target[0] != '/' || target.find("..") != std::string::npos) {
      return reply(http::status::bad_request, "bad path\n", "text/plain");
    }
    if (target == "/") target = "/index.html";
    if (options.assets.empty()) {
      if (target == "/index.html") {
        return reply(http::status::ok, std::string(kPlaceholder), "text/html; charset=utf-8");
      }
    } else {
      std::filesystem::path file = options.assets / target.substr(1);
      if (auto body = read_file(file)) return reply(http::status::ok, *body, mime_type(file));
    }
    return reply(http::status::not_found, "not found\n", "text/plain");
  }

  awaitable<void> session(websocket::stream<beast::tcp_stream> ws) {
    ProtocolHandler handler(options.metrics, options.constants);
    beast::flat_buffer buffer;
    for (;;) {
      co_await ws.async_read(buffer, use_awaitable);
      std::string request = beast::buffers_to_string(buffer.data());
      buffer.consume(buffer.size());
      ws.text(true);
      for (const json& response : handler.handle_text(request)) {
        co_await ws.async_write(asio::buffer(response.dump()), use_awaitable);
      }
    }
  }

  awaitable<void> connection(tcp::socket socket) {
    beast::tcp_stream stream(std::move(socket));
    beast::flat_buffer buffer;
    for (;;) {
      http::request<http::string_body> req;
      co_await http::async_read(stream, buffer, req, use_awaitable);
      if (websocket::is_upgrade(req)) {
        std::string target(req.target());
        if (target.substr(0, target.find('?')) != "/session") {
          http::response<http::string_body> res{http::status::not_found, req.version()};
          res.body() = "websocket endpoint is /session\n";
          res.prepare_payload();
          co_await http::async_write(stream, res, use_awaitable);
          co_return;
        }
        websocket::stream<beast::tcp_stream> ws(std::move(stream));
        ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        co_await ws.async_accept(req, use_awaitable);
        co_await session(std::move(ws));
        co_return;
      }
      auto res = respond(req);
      bool keep_alive = res.keep_alive();
      co_await http::async_write(stream, res, use_awaitable);
      if (!keep_alive) {
        beast::error_code ec;
        stream.socket().shutdown(tcp::socket::shutdown_send, ec);
        co_return;
      }
    }
  }

  awaitable<void> listen() {
    for (;;) {
      tcp::socket socket(asio::make_strand(ioc));
      co_await acceptor.async_accept(socket, use_awaitable);
      auto executor = socket.get_executor();
      asio::co_spawn(executor, connection(std::move(socket)), asio::detached);
    }
  }

  void shutdown() {
    beast::error_code ec;
    acceptor.close(ec);
    signals.cancel(ec);
    ioc.stop();
  }

  ServerOptions options;
  asio::io_context ioc;
  tcp::acceptor acceptor;
  asio::signal_set signals;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() = default;

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  Impl& s = *impl_;
  if (s.options.handle_signals) {
    s.signals.add(SIGINT);
    s.signals.add(SIGTERM);
    s.signals.async_wait([&s](const beast::error_code& ec, int) {
      if (!ec) s.shutdown();
    });
  }
  asio::co_spawn(s.ioc, s.listen(), asio::detached);
  std::vector<std::thread> workers;
  for (unsigned i = 1; i < std::max(1u, s.options.threads); ++i) {
    workers.emplace_back([&s] { s.ioc.run(); });
  }
  s.ioc.run();
  for (auto& t : workers) t.join();
}

void Server::stop() {
  Impl& s = *impl_;
  asio::post(s.ioc, [&s] { s.shutdown(); });
}

}  // namespace logichart
