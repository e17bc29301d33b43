#include <chrono>

#include <httplib.h>

#include "semantelli/engine_gateway.hpp"
#include "semantelli/error.hpp"

namespace semantelli {
namespace {

using Clock = std::chrono::steady_clock;

std::string encode_query(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

void substitute(std::string& s, std::string_view key, const std::string& value) {
  for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size()))
    s.replace(pos, key.size(), value);
}

}  // namespace

FetchOutcome HttpEngine::fetch(const EngineDescriptor& engine, const EngineQuery& q, Millis deadline) const {
  const auto start = Clock::now();
  const auto query_text = q.combination.keywords.joined();
  auto fail = [&](FetchFailureKind kind, std::string detail) {
    return FetchOutcome{engine.id, FetchFailure{kind, std::move(detail)},
                        std::chrono::duration_cast<Millis>(Clock::now() - start), query_text};
  };

  if (!engine.supports(q.vertical))
    return fail(FetchFailureKind::Unsupported,
                engine.id + " does not serve the " + std::string(to_string(q.vertical)) + " vertical");
  if (!engine.live) return fail(FetchFailureKind::TransportError, engine.id + " has no live adapter config");

  std::string url = engine.live->url_template;
  substitute(url, "{query}", encode_query(query_text));
  substitute(url, "{limit}", std::to_string(q.limit));
  substitute(url, "{vertical}", std::string(to_string(q.vertical)));

  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return fail(FetchFailureKind::TransportError, "bad URL template: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  try {
    httplib::Client client(origin);
    if (!client.is_valid()) return fail(FetchFailureKind::TransportError, "unsupported origin " + origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(deadline);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(deadline - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    client.set_follow_location(true);

    auto res = client.Get(path);
    if (!res) {
      const auto err = res.error();
      const auto kind = (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) &&
                                Clock::now() - start >= deadline
                            ? FetchFailureKind::Timeout
                            : FetchFailureKind::TransportError;
      return fail(kind, httplib::to_string(err));
    }
    if (res->status != 200) return fail(FetchFailureKind::TransportError, "HTTP status " + std::to_string(res->status));
    auto results = map_live_response(res->body, *engine.live, engine.id, q.vertical, q.limit);
    return {engine.id, std::move(results), std::chrono::duration_cast<Millis>(Clock::now() - start), query_text};
  } catch (const Error& e) {
    return fail(FetchFailureKind::ParseError, e.detail());
  } catch (const std::exception& e) {
    return fail(FetchFailureKind::TransportError, e.what());
  }
}

}  // namespace semantelli
