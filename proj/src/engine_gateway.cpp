#include "semantelli/engine_gateway.hpp"

#include <condition_variable>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "semantelli/error.hpp"

namespace semantelli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

Millis since(Clock::time_point start) {
  return std::chrono::duration_cast<Millis>(Clock::now() - start);
}

FetchOutcome failed(const std::string& engine_id, const EngineQuery& q, FetchFailureKind kind, std::string detail,
                    Clock::time_point start) {
  return {engine_id, FetchFailure{kind, std::move(detail)}, since(start), q.combination.keywords.joined()};
}

FetchOutcome succeeded(const std::string& engine_id, const EngineQuery& q, std::vector<RawResult> results,
                       Clock::time_point start) {
  if (results.size() > q.limit) results.resize(q.limit);
  return {engine_id, std::move(results), since(start), q.combination.keywords.joined()};
}

std::optional<std::string> string_at(const json& record, const std::string& pointer) {
  if (pointer.empty()) return record.is_string() ? std::optional(record.get<std::string>()) : std::nullopt;
  try {
    const json::json_pointer ptr(pointer);
    if (!record.contains(ptr)) return std::nullopt;
    const auto& v = record.at(ptr);
    if (!v.is_string()) return std::nullopt;
    return v.get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::optional<FetchFailureKind> parse_fail_flag(const json& value, std::string_view source) {
  if (value.is_boolean()) return value.get<bool>() ? std::optional(FetchFailureKind::TransportError) : std::nullopt;
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "timeout") return FetchFailureKind::Timeout;
    if (s == "transport") return FetchFailureKind::TransportError;
    if (s == "parse") return FetchFailureKind::ParseError;
  }
  throw Error(ErrorCode::ParseError, std::string(source) + ": 'fail' must be a boolean or one of timeout/transport/parse");
}

}  // namespace

std::string_view to_string(FetchFailureKind kind) noexcept {
  switch (kind) {
    case FetchFailureKind::Timeout: return "timeout";
    case FetchFailureKind::TransportError: return "transport_error";
    case FetchFailureKind::ParseError: return "parse_error";
    case FetchFailureKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

FixtureFile parse_fixture(std::string_view text, const std::string& engine_id, Vertical vertical,
                          std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string(source) + ": " + e.what());
  }

  FixtureFile file;
  const json* records = &doc;
  if (doc.is_object()) {
    if (doc.contains("latency_ms")) {
      if (!doc["latency_ms"].is_number_unsigned())
        throw Error(ErrorCode::ParseError, std::string(source) + ": 'latency_ms' must be a non-negative integer");
      file.latency = Millis(doc["latency_ms"].get<std::int64_t>());
    }
    if (doc.contains("fail")) file.fail = parse_fail_flag(doc["fail"], source);
    if (!doc.contains("results")) throw Error(ErrorCode::ParseError, std::string(source) + ": missing 'results' array");
    records = &doc["results"];
  }
  if (!records->is_array()) throw Error(ErrorCode::ParseError, std::string(source) + ": expected an array of results");

  for (std::size_t i = 0; i < records->size(); ++i) {
    const auto& rec = (*records)[i];
    const auto where = std::string(source) + ": record " + std::to_string(i);
    if (!rec.is_object()) throw Error(ErrorCode::ParseError, where + " is not an object");
    auto required = [&](const char* key) {
      if (!rec.contains(key) || !rec[key].is_string())
        throw Error(ErrorCode::ParseError, where + " is missing string field '" + key + "'");
      return rec[key].get<std::string>();
    };

    RawResult r;
    r.title = required("title");
    r.url = required("url");
    r.snippet = required("snippet");
    r.engine_id = engine_id;
    r.engine_rank = i + 1;
    if (rec.contains("engine_rank") && (!rec["engine_rank"].is_number_unsigned() || rec["engine_rank"].get<std::size_t>() != i + 1))
      throw Error(ErrorCode::ParseError, where + ": engine_rank must equal its 1-based position");
    r.vertical = vertical;
    if (rec.contains("vertical")) {
      try {
        r.vertical = parse_vertical(required("vertical"));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.detail());
      }
    }
    if (rec.contains("timestamp")) {
      r.timestamp = parse_timestamp(required("timestamp"));
      if (!r.timestamp) throw Error(ErrorCode::ParseError, where + ": malformed timestamp");
    }
    if (rec.contains("image_url")) r.image_url = required("image_url");
    if (r.vertical == Vertical::News && !r.timestamp)
      throw Error(ErrorCode::ParseError, where + ": news result without timestamp");
    if (r.vertical == Vertical::Image && !r.image_url)
      throw Error(ErrorCode::ParseError, where + ": image result without image_url");
    file.results.push_back(std::move(r));
  }
  return file;
}

FetchOutcome FixtureEngine::fetch(const EngineDescriptor& engine, const EngineQuery& q, Millis deadline) const {
  const auto start = Clock::now();
  if (!engine.supports(q.vertical))
    return failed(engine.id, q, FetchFailureKind::Unsupported,
                  engine.id + " does not serve the " + std::string(to_string(q.vertical)) + " vertical", start);

  const auto path = root_ / engine.id / (std::string(to_string(q.vertical)) + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return failed(engine.id, q, FetchFailureKind::TransportError, "no fixture at " + path.string(), start);
  std::ostringstream buf;
  buf << in.rdbuf();

  FixtureFile file;
  try {
    file = parse_fixture(buf.str(), engine.id, q.vertical, path.string());
  } catch (const Error& e) {
    return failed(engine.id, q, FetchFailureKind::ParseError, e.detail(), start);
  }

  if (file.latency > deadline) {
    std::this_thread::sleep_until(start + deadline);
    return failed(engine.id, q, FetchFailureKind::Timeout,
                  "no reply within " + std::to_string(deadline.count()) + " ms", start);
  }
  std::this_thread::sleep_until(start + file.latency);
  if (file.fail) return failed(engine.id, q, *file.fail, "injected failure", start);
  return succeeded(engine.id, q, std::move(file.results), start);
}

std::vector<RawResult> map_live_response(std::string_view body, const LiveAdapterConfig& config,
                                         const std::string& engine_id, Vertical vertical, std::size_t limit) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("response is not JSON: ") + e.what());
  }
  const json* list = &doc;
  if (!config.results_path.empty()) {
    try {
      list = &doc.at(json::json_pointer(config.results_path));
    } catch (const json::exception&) {
      throw Error(ErrorCode::ParseError, "response has no result list at '" + config.results_path + "'");
    }
  }
  if (!list->is_array()) throw Error(ErrorCode::ParseError, "'" + config.results_path + "' is not an array");

  std::vector<RawResult> out;
  for (const auto& rec : *list) {
    if (out.size() >= limit) break;
    auto url = string_at(rec, config.url_path);
    if (!url || url->empty()) continue;
    RawResult r;
    r.url = std::move(*url);
    r.title = string_at(rec, config.title_path).value_or("");
    r.snippet = string_at(rec, config.snippet_path).value_or("");
    if (r.title.empty() && r.snippet.empty()) continue;
    if (r.title.empty()) r.title = r.snippet;
    r.engine_id = engine_id;
    r.vertical = vertical;
    if (auto ts = string_at(rec, config.timestamp_path)) r.timestamp = parse_timestamp(*ts);
    if (auto img = string_at(rec, config.image_url_path); img && !img->empty()) r.image_url = std::move(*img);
    if (vertical == Vertical::News && !r.timestamp) continue;
    if (vertical == Vertical::Image && !r.image_url) continue;
    r.engine_rank = out.size() + 1;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FetchOutcome> fan_out(const PriorityAssignment& engines, const Registry& registry,
                                  const AdapterMap& adapters, const EngineQuery& q, Millis per_engine_deadline) {
  if (engines.empty()) throw Error(ErrorCode::InvalidArgument, "fan_out needs at least one engine");

  struct Slot {
    std::mutex mutex;
    std::condition_variable ready;
    std::optional<FetchOutcome> outcome;
  };

  const auto start = Clock::now();
  std::vector<std::shared_ptr<Slot>> slots;
  std::vector<std::optional<FetchOutcome>> immediate(engines.size());

  for (std::size_t i = 0; i < engines.size(); ++i) {
    const auto& id = engines[i].engine_id;
    auto slot = std::make_shared<Slot>();
    slots.push_back(slot);

    const auto* descriptor = registry.find(id);
    const auto adapter = adapters.find(id);
    if (descriptor == nullptr || adapter == adapters.end() || !adapter->second) {
      immediate[i] = failed(id, q, FetchFailureKind::TransportError,
                            descriptor ? "no adapter configured" : "engine not registered", start);
      continue;
    }
    // The worker owns copies of everything it touches so it can outlive
    // this call when it misses the deadline.
    std::thread([slot, adapter = adapter->second, engine = *descriptor, q, per_engine_deadline] {
      FetchOutcome outcome;
      try {
        outcome = adapter->fetch(engine, q, per_engine_deadline);
      } catch (const std::exception& e) {
        outcome = {engine.id, FetchFailure{FetchFailureKind::TransportError, e.what()}, Millis{0},
                   q.combination.keywords.joined()};
      }
      std::lock_guard lock(slot->mutex);
      slot->outcome = std::move(outcome);
      slot->ready.notify_all();
    }).detach();
  }

  const auto cutoff = start + per_engine_deadline + kDeadlineGrace;
  std::vector<FetchOutcome> out;
  out.reserve(engines.size());
  for (std::size_t i = 0; i < engines.size(); ++i) {
    if (immediate[i]) {
      out.push_back(std::move(*immediate[i]));
      continue;
    }
    auto& slot = *slots[i];
    std::unique_lock lock(slot.mutex);
    if (slot.ready.wait_until(lock, cutoff, [&] { return slot.outcome.has_value(); })) {
      out.push_back(std::move(*slot.outcome));
    } else {
      out.push_back(failed(engines[i].engine_id, q, FetchFailureKind::Timeout,
                           "no reply within deadline plus grace", start));
    }
  }
  return out;
}

}  // namespace semantelli
