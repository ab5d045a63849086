#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace vwsd::testkit {

// In-process inference service speaking the embed/generate/translate wire
// protocols, backed by the deterministic mocks. Vectors served over HTTP are
// bit-identical to in-process mock_embed for the same seed and dim.
class MockServer {
 public:
  MockServer(uint64_t seed, uint32_t dim);
  ~MockServer();

  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  // Binds 127.0.0.1 on an ephemeral port and serves until stop().
  void start();
  void stop();

  int port() const { return port_; }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }

  size_t embed_requests() const { return embed_requests_.load(); }
  size_t generate_requests() const { return generate_requests_.load(); }
  size_t translate_requests() const { return translate_requests_.load(); }

 private:
  uint64_t seed_;
  uint32_t dim_;
  int port_ = 0;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::atomic<size_t> embed_requests_{0};
  std::atomic<size_t> generate_requests_{0};
  std::atomic<size_t> translate_requests_{0};
};

}  // namespace vwsd::testkit
