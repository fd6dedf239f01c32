#pragma once

// In-process HTTP server for client tests.

#include <httplib.h>

#include <string>
#include <thread>

namespace ragloop::testing {

class TestServer {
 public:
  TestServer() { port_ = server.bind_to_any_port("127.0.0.1"); }

  ~TestServer() { stop(); }

  void start() {
    thread_ = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  void stop() {
    if (thread_.joinable()) {
      server.stop();
      thread_.join();
    }
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int port() const { return port_; }

  httplib::Server server;

 private:
  int port_ = 0;
  std::thread thread_;
};

}  // namespace ragloop::testing
