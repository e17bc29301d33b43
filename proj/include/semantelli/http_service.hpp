#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "semantelli/error.hpp"
#include "semantelli/search_service.hpp"

namespace httplib {
class Server;
}

namespace semantelli {

/// HTTP status for an error class raised by search().
int http_status(ErrorCode code) noexcept;

/// GET /healthz, GET /api/search, GET /api/engines, and optional static
/// assets under "/".
class HttpService {
 public:
  explicit HttpService(std::shared_ptr<const SearchService> search,
                       std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Port 0 picks a free port. Throws Error{BindError}.
  int bind(const std::string& host, int port);
  /// Serves on the bound socket until stop(). Blocks.
  void run();
  /// bind() + run() on a background thread.
  int start(const std::string& host, int port);
  /// Stops accepting; in-flight requests complete before run() returns.
  void stop();

  int port() const noexcept { return port_; }

 private:
  std::shared_ptr<const SearchService> search_;
  std::unique_ptr<httplib::Server> server_;
  std::thread worker_;
  int port_ = -1;
};

}  // namespace semantelli
