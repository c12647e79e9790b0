#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "logichart/diagram.hpp"

namespace logichart {

struct ServerOptions {
  std::string address = "127.0.0.1";
  // 0 picks a free port.
  std::uint16_t port = 8080;
  // Static UI files served at `/`; a placeholder page when empty.
  std::filesystem::path assets;
  TextMetrics metrics;
  LayoutConstants constants;
  unsigned threads = 4;
  // Stop on SIGINT/SIGTERM.
  bool handle_signals = false;
};

// HTTP + WebSocket host for the session protocol:
//   GET /healthz   -> 200
//   /session       -> WebSocket, one text frame per JSON message
//   GET /...       -> static assets
class Server {
 public:
  // Binds and listens; throws std::system_error if the port is taken.
  explicit Server(ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;
  // Blocks until stop().
  void run();
  // Safe from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace logichart
