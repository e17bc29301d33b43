#include "semantelli/result_store.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "semantelli/error.hpp"

namespace semantelli {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '+' || c == '-' || c == '.';
  });
}

std::string_view default_port(std::string_view scheme) {
  if (scheme == "http" || scheme == "ws") return "80";
  if (scheme == "https" || scheme == "wss") return "443";
  if (scheme == "ftp") return "21";
  return {};
}

[[noreturn]] void invalid(std::string_view url, const char* why) {
  throw Error(ErrorCode::InvalidUrl, "'" + std::string(url) + "': " + why);
}

}  // namespace

std::string normalize_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) invalid(url, "not an absolute URL");
  const auto scheme = lower(url.substr(0, scheme_end));
  if (!valid_scheme(scheme)) invalid(url, "bad scheme");
  if (url.find_first_of(" \t\r\n") != std::string_view::npos) invalid(url, "contains whitespace");

  auto rest = url.substr(scheme_end + 3);
  if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);

  const auto authority_end = rest.find_first_of("/?");
  auto authority = rest.substr(0, authority_end);
  const auto tail = authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

  std::string userinfo;
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = std::string(authority.substr(0, at + 1));
    authority = authority.substr(at + 1);
  }

  std::string_view host = authority;
  std::string_view port;
  if (!authority.empty() && authority.front() == '[') {
    const auto close = authority.find(']');
    if (close == std::string_view::npos) invalid(url, "unterminated IPv6 host");
    host = authority.substr(0, close + 1);
    const auto after = authority.substr(close + 1);
    if (!after.empty()) {
      if (after.front() != ':') invalid(url, "bad authority");
      port = after.substr(1);
    }
  } else if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    port = authority.substr(colon + 1);
  }
  if (host.empty()) invalid(url, "missing host");
  if (!std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); }))
    invalid(url, "non-numeric port");

  std::string out = scheme + "://" + userinfo + lower(host);
  if (!port.empty() && port != default_port(scheme)) out += ":" + std::string(port);

  std::string_view path = tail;
  std::string_view query;
  if (const auto q = tail.find('?'); q != std::string_view::npos) {
    path = tail.substr(0, q);
    query = tail.substr(q);
  }
  if (path != "/") out += path;
  out += query;
  return out;
}

void ResultBuffer::add(FetchOutcome outcome) {
  std::lock_guard lock(mutex_);
  outcomes_.push_back(std::move(outcome));
}

void ResultBuffer::add(std::vector<FetchOutcome> outcomes) {
  std::lock_guard lock(mutex_);
  for (auto& o : outcomes) outcomes_.push_back(std::move(o));
}

MergeOutput ResultBuffer::merge(const Registry& registry) const {
  std::lock_guard lock(mutex_);
  return semantelli::merge(outcomes_, registry, vertical_);
}

MergeOutput merge(const std::vector<FetchOutcome>& outcomes, const Registry& registry,
                  std::optional<Vertical> vertical) {
  MergeOutput out;
  std::map<std::string, std::vector<const RawResult*>> groups;

  for (const auto& outcome : outcomes) {
    if (!outcome.ok()) {
      ++out.diagnostics.failed_outcomes;
      continue;
    }
    for (const auto& raw : outcome.results()) {
      if (vertical && raw.vertical != *vertical) {
        ++out.diagnostics.wrong_vertical;
        continue;
      }
      try {
        groups[normalize_url(raw.url)].push_back(&raw);
      } catch (const Error&) {
        ++out.diagnostics.invalid_urls;
      }
    }
  }

  auto weight = [&](const std::string& id) {
    const auto* e = registry.find(id);
    return e ? e->initial_weight : 0.0;
  };
  // Total order over copies, so the choice does not depend on arrival order.
  auto better = [&](const RawResult* a, const RawResult* b) {
    const double wa = weight(a->engine_id), wb = weight(b->engine_id);
    if (wa != wb) return wa > wb;
    if (a->engine_rank != b->engine_rank) return a->engine_rank < b->engine_rank;
    if (a->engine_id != b->engine_id) return a->engine_id < b->engine_id;
    return std::tie(a->url, a->title, a->snippet) < std::tie(b->url, b->title, b->snippet);
  };

  out.results.reserve(groups.size());
  for (auto& [canonical, copies] : groups) {
    const RawResult& rep = **std::min_element(copies.begin(), copies.end(), better);
    MergedResult m;
    m.canonical_url = canonical;
    m.url = rep.url;
    m.title = rep.title;
    m.snippet = rep.snippet;
    m.vertical = rep.vertical;
    m.timestamp = rep.timestamp;
    m.image_url = rep.image_url;
    m.representative_engine = rep.engine_id;
    m.representative_rank = rep.engine_rank;
    for (const auto* c : copies) m.provenance.push_back({c->engine_id, c->engine_rank});
    std::sort(m.provenance.begin(), m.provenance.end());
    m.provenance.erase(std::unique(m.provenance.begin(), m.provenance.end()), m.provenance.end());
    out.results.push_back(std::move(m));
  }
  return out;
}

}  // namespace semantelli
