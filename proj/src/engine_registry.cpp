#include "semantelli/engine_registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semantelli/error.hpp"
#include "semantelli_default_data.hpp"

namespace semantelli {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(std::string_view source, const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, std::string(source) + ": field '" + field + "': " + what);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

class FieldReader {
 public:
  FieldReader(const json& node, std::string path, std::string_view source)
      : node_(node), path_(std::move(path)), source_(source) {
    if (!node_.is_object()) field_error(source_, path_, "expected an object");
  }

  std::string field(std::string_view key) const { return path_ + "." + std::string(key); }
  bool has(std::string_view key) const { return node_.contains(key); }
  const json& raw(std::string_view key) const { return node_.at(key); }

  std::string string(std::string_view key) const {
    if (!has(key)) field_error(source_, field(key), "missing");
    if (!raw(key).is_string()) field_error(source_, field(key), "expected a string");
    return raw(key).get<std::string>();
  }
  std::string string_or(std::string_view key, std::string fallback) const {
    return has(key) ? string(key) : fallback;
  }
  double number(std::string_view key) const {
    if (!has(key)) field_error(source_, field(key), "missing");
    if (!raw(key).is_number()) field_error(source_, field(key), "expected a number");
    return raw(key).get<double>();
  }
  bool boolean_or(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!raw(key).is_boolean()) field_error(source_, field(key), "expected a boolean");
    return raw(key).get<bool>();
  }

 private:
  const json& node_;
  std::string path_;
  std::string_view source_;
};

LiveAdapterConfig parse_live(const json& node, const std::string& path, std::string_view source) {
  FieldReader r(node, path, source);
  LiveAdapterConfig live;
  live.url_template = r.string("url_template");
  live.results_path = r.string_or("results_path", "");
  if (r.has("fields")) {
    FieldReader f(r.raw("fields"), r.field("fields"), source);
    live.title_path = f.string_or("title", live.title_path);
    live.url_path = f.string_or("url", live.url_path);
    live.snippet_path = f.string_or("snippet", live.snippet_path);
    live.timestamp_path = f.string_or("timestamp", live.timestamp_path);
    live.image_url_path = f.string_or("image_url", live.image_url_path);
  }
  return live;
}

EngineDescriptor parse_engine(const json& node, const std::string& path, std::string_view source) {
  FieldReader r(node, path, source);
  EngineDescriptor e;
  e.id = r.string("id");
  e.display_name = r.string_or("display_name", e.id);
  e.initial_weight = r.number("initial_weight");
  e.enabled = r.boolean_or("enabled", true);
  if (r.has("domain_boosts")) {
    const auto& boosts = r.raw("domain_boosts");
    if (!boosts.is_object()) field_error(source, r.field("domain_boosts"), "expected an object");
    for (const auto& [domain, value] : boosts.items()) {
      if (!value.is_number()) field_error(source, r.field("domain_boosts") + "." + domain, "expected a number");
      e.domain_boosts[domain] = value.get<double>();
    }
  }
  if (r.has("supported_verticals")) {
    const auto& verticals = r.raw("supported_verticals");
    if (!verticals.is_array()) field_error(source, r.field("supported_verticals"), "expected an array");
    e.supported_verticals.clear();
    for (std::size_t i = 0; i < verticals.size(); ++i) {
      const auto where = r.field("supported_verticals") + "[" + std::to_string(i) + "]";
      if (!verticals[i].is_string()) field_error(source, where, "expected a string");
      try {
        e.supported_verticals.insert(parse_vertical(verticals[i].get<std::string>()));
      } catch (const Error& err) {
        field_error(source, where, err.detail());
      }
    }
  }
  if (r.has("live")) e.live = parse_live(r.raw("live"), r.field("live"), source);
  return e;
}

void validate(const EngineDescriptor& e) {
  if (e.id.empty()) throw Error(ErrorCode::InvalidArgument, "engine id must be non-empty");
  if (!(e.initial_weight > 0.0) || e.initial_weight > 1.0)
    throw Error(ErrorCode::InvalidArgument, "engine '" + e.id + "': initial_weight must be in (0, 1]");
  for (const auto& [domain, boost] : e.domain_boosts)
    if (!(boost >= 0.0))
      throw Error(ErrorCode::InvalidArgument, "engine '" + e.id + "': boost for '" + domain + "' is negative");
}

}  // namespace

Registry::Registry(std::vector<EngineDescriptor> engines, const std::map<std::string, std::string>& domains,
                   const StopWordList& stops)
    : engines_(std::move(engines)), raw_domains_(domains) {
  for (const auto& e : engines_) validate(e);
  std::sort(engines_.begin(), engines_.end(),
            [](const EngineDescriptor& a, const EngineDescriptor& b) { return a.id < b.id; });
  const auto dup = std::adjacent_find(engines_.begin(), engines_.end(),
                                      [](const auto& a, const auto& b) { return a.id == b.id; });
  if (dup != engines_.end()) throw Error(ErrorCode::DuplicateEngineId, "engine id '" + dup->id + "' appears twice");

  for (const auto& [keyword, domain] : domains)
    for (const auto& k : conflate(keyword, stops)) domains_[k] = domain;
}

Registry Registry::parse(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                std::string(source) + ": line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  FieldReader root(doc, "$", source);
  if (!root.has("engines") || !root.raw("engines").is_array()) field_error(source, "$.engines", "expected an array");

  std::vector<EngineDescriptor> engines;
  const auto& list = root.raw("engines");
  for (std::size_t i = 0; i < list.size(); ++i)
    engines.push_back(parse_engine(list[i], "$.engines[" + std::to_string(i) + "]", source));

  std::map<std::string, std::string> domains;
  if (root.has("domains")) {
    const auto& entries = root.raw("domains");
    if (!entries.is_array()) field_error(source, "$.domains", "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      FieldReader d(entries[i], "$.domains[" + std::to_string(i) + "]", source);
      domains[d.string("keyword")] = d.string("domain");
    }
  }
  try {
    return Registry(std::move(engines), domains);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::ParseError, std::string(source) + ": " + e.detail());
    throw Error(e.code(), std::string(source) + ": " + e.detail());
  }
}

Registry Registry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "SEID file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const Registry& Registry::builtin() {
  static const Registry registry = parse(data::kSeid, "builtin seid.json");
  return registry;
}

std::string Registry::to_json() const {
  json engines = json::array();
  for (const auto& e : engines_) {
    json verticals = json::array();
    for (auto v : e.supported_verticals) verticals.push_back(to_string(v));
    json node = {{"id", e.id},
                 {"display_name", e.display_name},
                 {"initial_weight", e.initial_weight},
                 {"domain_boosts", e.domain_boosts},
                 {"enabled", e.enabled},
                 {"supported_verticals", verticals}};
    if (e.live) {
      node["live"] = {{"url_template", e.live->url_template},
                      {"results_path", e.live->results_path},
                      {"fields",
                       {{"title", e.live->title_path},
                        {"url", e.live->url_path},
                        {"snippet", e.live->snippet_path},
                        {"timestamp", e.live->timestamp_path},
                        {"image_url", e.live->image_url_path}}}};
    }
    engines.push_back(std::move(node));
  }
  json domains = json::array();
  for (const auto& [keyword, domain] : raw_domains_) domains.push_back({{"keyword", keyword}, {"domain", domain}});
  return json{{"engines", engines}, {"domains", domains}}.dump(2);
}

void Registry::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write SEID file " + path.string());
  out << to_json() << '\n';
}

const EngineDescriptor* Registry::find(std::string_view id) const {
  const auto it = std::lower_bound(engines_.begin(), engines_.end(), id,
                                   [](const EngineDescriptor& e, std::string_view key) { return e.id < key; });
  return (it != engines_.end() && it->id == id) ? &*it : nullptr;
}

const EngineDescriptor& Registry::at(std::string_view id) const {
  if (const auto* e = find(id)) return *e;
  throw Error(ErrorCode::UnknownEngine, "engine '" + std::string(id) + "' is not registered");
}

std::optional<std::string> Registry::domain_tag(std::string_view keyword) const {
  const auto it = domains_.find(std::string(keyword));
  if (it == domains_.end()) return std::nullopt;
  return it->second;
}

PriorityAssignment assign_priorities(const KeywordSequence& query, const Registry& registry) {
  std::vector<std::string> tags;
  for (const auto& k : query)
    if (auto tag = registry.domain_tag(k)) tags.push_back(std::move(*tag));

  PriorityAssignment out;
  for (const auto& e : registry.engines()) {
    if (!e.enabled) continue;
    double boost = 0.0;
    for (const auto& tag : tags)
      if (auto it = e.domain_boosts.find(tag); it != e.domain_boosts.end()) boost = std::max(boost, it->second);
    out.push_back({e.id, e.initial_weight + boost});
  }
  if (out.empty()) throw Error(ErrorCode::NoEnginesEnabled, "no enabled engines in registry");
  std::sort(out.begin(), out.end(), [](const EnginePriority& a, const EnginePriority& b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.engine_id < b.engine_id;
  });
  return out;
}

}  // namespace semantelli
