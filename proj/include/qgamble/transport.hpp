#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qgamble {

struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Duplex byte stream carrying LF-terminated frames. read_line returns the
// next frame without its terminator, or nullopt on orderly close; timeouts
// and I/O failures raise TransportError.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void write_line(const std::string& line) = 0;
  virtual std::optional<std::string> read_line(
      std::chrono::milliseconds timeout) = 0;
  virtual void close() = 0;
};

using TransportPair =
    std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>;

// In-memory connected pair; .first and .second are the two ends.
TransportPair make_loopback_pair();

// Listening TCP endpoint for "host:port" (IPv4). accept() yields the
// connected transport for exactly one peer.
class TcpListener {
 public:
  explicit TcpListener(const std::string& addr);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::string local_addr() const;  // actual host:port (resolves port 0)
  std::unique_ptr<Transport> accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
};

// Connects to "host:port", retrying until the deadline so tests can start
// both ends concurrently.
std::unique_ptr<Transport> tcp_connect(const std::string& addr,
                                       std::chrono::milliseconds timeout);

}  // namespace qgamble
