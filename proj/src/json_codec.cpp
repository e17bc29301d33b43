#include "semantelli/json_codec.hpp"

namespace semantelli {

using nlohmann::json;

json to_json(const ScoredResult& item) {
  const auto& r = item.result;
  json provenance = json::array();
  for (const auto& p : r.provenance) provenance.push_back({{"engine", p.engine_id}, {"rank", p.engine_rank}});
  json out = {
      {"title", r.title},
      {"url", r.url},
      {"canonical_url", r.canonical_url},
      {"snippet", r.snippet},
      {"vertical", to_string(r.vertical)},
      {"representative_engine", r.representative_engine},
      {"provenance", provenance},
      {"scores",
       {{"keyword_count", item.keyword_count},
        {"sequence_score", item.sequence_score},
        {"tiebreak_score", item.tiebreak_score},
        {"snippet_keyword_count", item.snippet_keywords.count()}}},
  };
  if (r.image_url) out["image_url"] = *r.image_url;
  if (r.timestamp) out["timestamp"] = format_timestamp(*r.timestamp);
  return out;
}

json items_to_json(const std::vector<ScoredResult>& items) {
  json out = json::array();
  for (const auto& item : items) out.push_back(to_json(item));
  return out;
}

json to_json(const SearchResponse& resp) {
  json outcomes = json::array();
  for (const auto& s : resp.engine_outcomes) {
    json o = {{"engine", s.engine_id},
              {"query", s.query},
              {"status", s.ok ? "ok" : std::string(to_string(*s.failure))},
              {"result_count", s.result_count},
              {"elapsed_ms", s.elapsed.count()}};
    if (!s.ok) o["detail"] = s.detail;
    outcomes.push_back(std::move(o));
  }
  return {
      {"query_keywords", resp.query_keywords.keywords()},
      {"query_keyword_count", resp.query_keywords.count()},
      {"vertical", to_string(resp.vertical)},
      {"items", items_to_json(resp.items)},
      {"engine_outcomes", outcomes},
      {"diagnostics",
       {{"invalid_urls", resp.diagnostics.invalid_urls},
        {"wrong_vertical", resp.diagnostics.wrong_vertical},
        {"failed_outcomes", resp.diagnostics.failed_outcomes}}},
      {"elapsed_ms", resp.elapsed.count()},
  };
}

json to_json(const EngineDescriptor& e) {
  json verticals = json::array();
  for (auto v : e.supported_verticals) verticals.push_back(to_string(v));
  return {{"id", e.id},
          {"display_name", e.display_name},
          {"initial_weight", e.initial_weight},
          {"domain_boosts", e.domain_boosts},
          {"enabled", e.enabled},
          {"supported_verticals", verticals},
          {"live", e.live.has_value()}};
}

json engines_to_json(const Registry& registry) {
  json out = json::array();
  for (const auto& e : registry.engines()) out.push_back(to_json(e));
  return out;
}

json to_json(const Error& err) { return {{"error", to_string(err.code())}, {"detail", err.detail()}}; }

}  // namespace semantelli
