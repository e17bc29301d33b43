#include "semantelli/http_service.hpp"

#include <charconv>

#include <httplib.h>

#include "semantelli/json_codec.hpp"

namespace semantelli {
namespace {

constexpr const char* kJson = "application/json";

std::size_t parse_limit(const std::string& text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
    throw Error(ErrorCode::InvalidArgument, "limit must be a positive integer");
  return value;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto id = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!id.empty()) ids.push_back(std::move(id));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return ids;
}

SearchRequest parse_request(const httplib::Request& http) {
  if (!http.has_param("q")) throw Error(ErrorCode::InvalidArgument, "missing query parameter 'q'");
  SearchRequest req;
  req.query = http.get_param_value("q");
  if (http.has_param("type")) req.vertical = parse_vertical(http.get_param_value("type"));
  if (http.has_param("limit")) req.limit = parse_limit(http.get_param_value("limit"));
  if (http.has_param("engines")) req.engines = split_ids(http.get_param_value("engines"));
  if (http.has_param("combinations")) {
    const auto v = http.get_param_value("combinations");
    if (v != "true" && v != "false") throw Error(ErrorCode::InvalidArgument, "combinations must be true or false");
    req.use_combinations = v == "true";
  }
  return req;
}

void reply_error(httplib::Response& res, const Error& err) {
  res.status = http_status(err.code());
  res.set_content(to_json(err).dump(), kJson);
}

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyQuery:
    case ErrorCode::InvalidArgument:
      return 400;
    case ErrorCode::UnknownEngine:
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::AllEnginesFailed:
      return 502;
    case ErrorCode::NoEnginesEnabled:
      return 503;
    default:
      return 500;
  }
}

HttpService::HttpService(std::shared_ptr<const SearchService> search, std::optional<std::filesystem::path> static_dir)
    : search_(std::move(search)), server_(std::make_unique<httplib::Server>()) {
  // httplib's default sets SO_REUSEPORT, which lets a second server bind an
  // occupied port silently.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });

  server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", kJson);
  });

  server_->Get("/api/engines", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(nlohmann::json{{"engines", engines_to_json(*search_->registry())}}.dump(), kJson);
  });

  server_->Get("/api/search", [this](const httplib::Request& http, httplib::Response& res) {
    try {
      const auto resp = search_->search(parse_request(http));
      res.set_content(to_json(resp).dump(), kJson);
    } catch (const Error& err) {
      reply_error(res, err);
    } catch (const std::exception& e) {
      reply_error(res, Error(ErrorCode::ConfigError, e.what()));
    }
  });

  if (static_dir && std::filesystem::is_directory(*static_dir)) {
    server_->set_mount_point("/", static_dir->string());
  } else {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("semantelli: GET /api/search?q=..., GET /api/engines, GET /healthz\n", "text/plain");
    });
  }
}

HttpService::~HttpService() {
  stop();
}

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  if (port_ < 0) throw Error(ErrorCode::BindError, "cannot bind " + host + ":" + std::to_string(port));
  return port_;
}

void HttpService::run() { server_->listen_after_bind(); }

int HttpService::start(const std::string& host, int port) {
  const int bound = bind(host, port);
  worker_ = std::thread([this] { run(); });
  server_->wait_until_ready();
  return bound;
}

void HttpService::stop() {
  server_->stop();
  if (worker_.joinable()) worker_.join();
}

}  // namespace semantelli
