#include "semantelli/search_service.hpp"

#include <algorithm>
#include <chrono>
#include <future>

#include "semantelli/error.hpp"
#include "semantelli/query_combinator.hpp"

namespace semantelli {
namespace {

using Clock = std::chrono::steady_clock;

PriorityAssignment select_engines(PriorityAssignment all, const std::optional<std::vector<std::string>>& wanted,
                                  const Registry& registry) {
  if (!wanted) return all;
  for (const auto& id : *wanted)
    if (!registry.find(id)) throw Error(ErrorCode::InvalidArgument, "unknown engine '" + id + "'");
  std::erase_if(all, [&](const EnginePriority& p) {
    return std::find(wanted->begin(), wanted->end(), p.engine_id) == wanted->end();
  });
  if (all.empty()) throw Error(ErrorCode::NoEnginesEnabled, "none of the requested engines is enabled");
  return all;
}

EngineStatus summarize(const FetchOutcome& o) {
  EngineStatus s;
  s.engine_id = o.engine_id;
  s.query = o.query;
  s.ok = o.ok();
  s.elapsed = o.elapsed;
  if (o.ok()) {
    s.result_count = o.results().size();
  } else {
    s.failure = o.failure().kind;
    s.detail = o.failure().detail;
  }
  return s;
}

}  // namespace

AdapterMap make_adapters(const Registry& registry, const std::filesystem::path& fixtures, bool live) {
  AdapterMap adapters;
  auto fixture = std::make_shared<const FixtureEngine>(fixtures);
  auto http = std::make_shared<const HttpEngine>();
  for (const auto& e : registry.engines()) {
    if (live && e.live) {
      adapters[e.id] = http;
    } else {
      adapters[e.id] = fixture;
    }
  }
  return adapters;
}

SearchService::SearchService(std::shared_ptr<const Registry> registry, StopWordList stops, AdapterMap adapters,
                             ServiceOptions options)
    : registry_(std::move(registry)), stops_(std::move(stops)), adapters_(std::move(adapters)), options_(options) {}

std::shared_ptr<SearchService> SearchService::from_config(const ServiceConfig& config) {
  auto registry = std::make_shared<const Registry>(config.seid ? Registry::load(*config.seid) : Registry::builtin());
  StopWordList stops = config.stop_words ? StopWordList::load(*config.stop_words) : StopWordList::english();
  if (config.options.engine_deadline <= Millis{0})
    throw Error(ErrorCode::ConfigError, "engine deadline must be positive");
  if (config.options.engine_limit == 0 || config.options.max_combinations == 0)
    throw Error(ErrorCode::ConfigError, "engine limit and max combinations must be positive");
  auto adapters = make_adapters(*registry, config.fixtures, config.live);
  return std::make_shared<SearchService>(std::move(registry), std::move(stops), std::move(adapters), config.options);
}

void order_by_recency(std::vector<ScoredResult>& items) {
  std::stable_sort(items.begin(), items.end(), [](const ScoredResult& a, const ScoredResult& b) {
    const auto ta = a.result.timestamp.value_or(Timestamp::min());
    const auto tb = b.result.timestamp.value_or(Timestamp::min());
    return ta > tb;
  });
}

SearchResponse SearchService::search(const SearchRequest& req) const {
  const auto start = Clock::now();
  if (req.limit == 0) throw Error(ErrorCode::InvalidArgument, "limit must be at least 1");

  const auto registry = registry_.get();
  SearchResponse resp;
  resp.vertical = req.vertical;
  resp.query_keywords = conflate(req.query, stops_);
  if (resp.query_keywords.empty())
    throw Error(ErrorCode::EmptyQuery, "query '" + req.query + "' has no keywords after conflation");

  const auto engines = select_engines(assign_priorities(resp.query_keywords, *registry), req.engines, *registry);

  std::vector<QueryCombination> combinations;
  if (req.use_combinations) {
    combinations = generate_combinations(resp.query_keywords, options_.max_combinations);
  } else {
    combinations.push_back({resp.query_keywords, 0, resp.query_keywords.count()});
  }

  ResultBuffer buffer(req.vertical);
  {
    std::vector<std::future<std::vector<FetchOutcome>>> pending;
    for (const auto& c : combinations) {
      EngineQuery q{c, req.vertical, options_.engine_limit};
      pending.push_back(std::async(std::launch::async, [&, q] {
        return fan_out(engines, *registry, adapters_, q, options_.engine_deadline);
      }));
    }
    for (auto& f : pending) buffer.add(f.get());
  }

  const auto& outcomes = buffer.outcomes();
  for (const auto& o : outcomes) resp.engine_outcomes.push_back(summarize(o));
  if (std::none_of(outcomes.begin(), outcomes.end(), [](const FetchOutcome& o) { return o.ok(); }))
    throw Error(ErrorCode::AllEnginesFailed, "every engine failed for '" + resp.query_keywords.joined() + "'");

  auto merged = buffer.merge(*registry);
  resp.diagnostics = merged.diagnostics;
  auto ranked = rank(std::move(merged.results), resp.query_keywords, *registry, stops_);
  resp.items = std::move(ranked.items);
  if (req.vertical == Vertical::News) order_by_recency(resp.items);
  if (resp.items.size() > req.limit) resp.items.resize(req.limit);

  resp.elapsed = std::chrono::duration_cast<Millis>(Clock::now() - start);
  return resp;
}

}  // namespace semantelli
