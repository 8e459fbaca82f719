#pragma once

#include <memory>
#include <string>

#include "gdpwage/service.hpp"

namespace gdpwage {

/// JSON-over-HTTP front end for a SessionStore, rooted at /api/v1.
class HttpServer {
 public:
  explicit HttpServer(SessionStore& store);
  ~HttpServer();

  /// Binds without serving yet. Port 0 picks a free port.
  bool bind(const std::string& host, int port);
  int port() const noexcept { return port_; }

  /// Serves until stop() is called from another thread. A stop() that arrives
  /// before listen() makes listen() return as soon as it starts.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = -1;
};

/// Splits "host:port"; the port defaults to 8750 when omitted.
std::pair<std::string, int> parse_bind_address(const std::string& text);

}  // namespace gdpwage
