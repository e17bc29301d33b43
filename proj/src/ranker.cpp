#include "semantelli/ranker.hpp"

#include <algorithm>
#include <unordered_set>

#include "semantelli/error.hpp"

namespace semantelli {

std::size_t keyword_count(const KeywordSequence& snippet, const KeywordSequence& query) {
  const std::unordered_set<std::string> wanted(query.begin(), query.end());
  return static_cast<std::size_t>(
      std::count_if(snippet.begin(), snippet.end(), [&](const std::string& k) { return wanted.contains(k); }));
}

std::size_t sequence_score(const KeywordSequence& snippet, const KeywordSequence& query) {
  const auto& a = snippet.keywords();
  const auto& b = query.keywords();
  // Two-row LCS table.
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double tiebreak_score(const MergedResult& result, const Registry& registry) {
  const auto& engine = registry.at(result.representative_engine);
  if (result.representative_rank == 0)
    throw Error(ErrorCode::InvalidArgument, "engine rank must be at least 1 for " + result.canonical_url);
  return engine.initial_weight / static_cast<double>(result.representative_rank);
}

bool ranks_before(const ScoredResult& a, const ScoredResult& b) {
  if (a.keyword_count != b.keyword_count) return a.keyword_count > b.keyword_count;
  if (a.sequence_score != b.sequence_score) return a.sequence_score > b.sequence_score;
  if (a.tiebreak_score != b.tiebreak_score) return a.tiebreak_score > b.tiebreak_score;
  return a.result.canonical_url < b.result.canonical_url;
}

RankedList rank(std::vector<MergedResult> results, const KeywordSequence& query, const Registry& registry,
                const StopWordList& stops) {
  if (query.empty()) throw Error(ErrorCode::EmptyQuery, "query has no keywords");

  RankedList out;
  out.query_keywords = query;
  out.items.reserve(results.size());
  for (auto& r : results) {
    ScoredResult s;
    s.snippet_keywords = conflate(r.snippet, stops);
    s.keyword_count = keyword_count(s.snippet_keywords, query);
    s.sequence_score = sequence_score(s.snippet_keywords, query);
    s.tiebreak_score = tiebreak_score(r, registry);
    s.result = std::move(r);
    out.items.push_back(std::move(s));
  }
  std::sort(out.items.begin(), out.items.end(), ranks_before);
  return out;
}

}  // namespace semantelli
