#pragma once

#include <json.hpp>

#include "semantelli/engine_registry.hpp"
#include "semantelli/error.hpp"
#include "semantelli/search_service.hpp"

namespace semantelli {

// Wire encoding shared by the HTTP API and `search --output json`.
nlohmann::json to_json(const ScoredResult& item);
nlohmann::json items_to_json(const std::vector<ScoredResult>& items);
nlohmann::json to_json(const SearchResponse& resp);
nlohmann::json to_json(const EngineDescriptor& engine);
nlohmann::json engines_to_json(const Registry& registry);
nlohmann::json to_json(const Error& err);

}  // namespace semantelli
