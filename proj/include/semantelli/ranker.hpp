#pragma once

#include <cstddef>
#include <vector>

#include "semantelli/conflation.hpp"
#include "semantelli/engine_registry.hpp"
#include "semantelli/result_store.hpp"

namespace semantelli {

struct ScoredResult {
  MergedResult result;
  KeywordSequence snippet_keywords;
  std::size_t keyword_count = 0;
  std::size_t sequence_score = 0;
  double tiebreak_score = 0.0;
};

struct RankedList {
  std::vector<ScoredResult> items;
  KeywordSequence query_keywords;
};

/// Number of snippet positions holding any query keyword.
std::size_t keyword_count(const KeywordSequence& snippet, const KeywordSequence& query);

/// Length of the longest common subsequence of the two keyword sequences.
std::size_t sequence_score(const KeywordSequence& snippet, const KeywordSequence& query);

/// initial_weight(representative engine) / representative rank.
/// Throws Error{UnknownEngine}.
double tiebreak_score(const MergedResult& result, const Registry& registry);

/// Scores every result's snippet against the query and sorts by keyword
/// count, then sequence score, then tie-break score (all descending), then
/// canonical URL ascending. Throws Error{EmptyQuery} when the query has no
/// keywords.
RankedList rank(std::vector<MergedResult> results, const KeywordSequence& query, const Registry& registry,
                const StopWordList& stops = StopWordList::english());

/// The total order rank() sorts by; true when `a` belongs before `b`.
bool ranks_before(const ScoredResult& a, const ScoredResult& b);

}  // namespace semantelli
