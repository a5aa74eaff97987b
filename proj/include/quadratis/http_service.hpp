#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "quadratis/error.hpp"
#include "quadratis/session.hpp"

namespace quadratis {

// HTTP/JSON front end of a SessionManager, including the per-session
// server-sent event stream of graph deltas.
class HttpService {
 public:
  explicit HttpService(SessionManager& manager);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Returns the bound port, or -1 on failure.
  int bind_to_any_port(const std::string& host = "127.0.0.1");
  bool bind(const std::string& host, int port);
  // Blocks until stop() is called.
  bool listen_after_bind();
  void stop();
  bool is_running() const;

  // How long an idle event stream waits before re-checking for shutdown.
  void set_event_poll_interval(std::chrono::milliseconds interval);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status used for an error code.
int http_status(ErrorCode code);

}  // namespace quadratis
