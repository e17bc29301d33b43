#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semantelli/conflation.hpp"
#include "semantelli/engine_gateway.hpp"
#include "semantelli/engine_registry.hpp"
#include "semantelli/ranker.hpp"
#include "semantelli/result_store.hpp"

namespace semantelli {

struct SearchRequest {
  std::string query;
  Vertical vertical = Vertical::Web;
  std::size_t limit = 20;
  std::optional<std::vector<std::string>> engines;
  bool use_combinations = false;
};

struct EngineStatus {
  std::string engine_id;
  std::string query;
  bool ok = false;
  std::optional<FetchFailureKind> failure;
  std::string detail;
  std::size_t result_count = 0;
  Millis elapsed{0};
};

struct SearchResponse {
  KeywordSequence query_keywords;
  Vertical vertical = Vertical::Web;
  std::vector<ScoredResult> items;
  std::vector<EngineStatus> engine_outcomes;
  MergeDiagnostics diagnostics;
  Millis elapsed{0};
};

struct ServiceOptions {
  Millis engine_deadline = kDefaultEngineDeadline;
  std::size_t engine_limit = kDefaultEngineLimit;
  std::size_t max_combinations = kDefaultMaxCombinations;
};

/// Where a service gets its registry, stop words and result sources.
/// Empty paths fall back to the builtin data.
struct ServiceConfig {
  std::optional<std::filesystem::path> seid;
  std::optional<std::filesystem::path> stop_words;
  std::filesystem::path fixtures;
  /// Engines with a live adapter config query over HTTP instead of fixtures.
  bool live = false;
  ServiceOptions options;
};

/// Builds adapters for every registered engine: HttpEngine for engines with
/// a live config when `live` is set, FixtureEngine over `fixtures` otherwise.
AdapterMap make_adapters(const Registry& registry, const std::filesystem::path& fixtures, bool live);

/// The full pipeline: conflate, combine, prioritise, fan out, merge, rank,
/// and order by vertical. Safe for concurrent search() calls.
class SearchService {
 public:
  SearchService(std::shared_ptr<const Registry> registry, StopWordList stops, AdapterMap adapters,
                ServiceOptions options = {});

  /// Throws Error{NotFound | ParseError | DuplicateEngineId | ConfigError}.
  static std::shared_ptr<SearchService> from_config(const ServiceConfig& config);

  /// Throws Error{EmptyQuery | InvalidArgument | NoEnginesEnabled | AllEnginesFailed}.
  SearchResponse search(const SearchRequest& req) const;

  std::shared_ptr<const Registry> registry() const { return registry_.get(); }
  void replace_registry(std::shared_ptr<const Registry> next) { registry_.replace(std::move(next)); }
  const StopWordList& stop_words() const noexcept { return stops_; }
  const ServiceOptions& options() const noexcept { return options_; }

 private:
  RegistryCell registry_;
  StopWordList stops_;
  AdapterMap adapters_;
  ServiceOptions options_;
};

/// Orders ranked news items newest first; equal timestamps keep rank order.
void order_by_recency(std::vector<ScoredResult>& items);

}  // namespace semantelli
