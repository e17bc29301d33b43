#pragma once

#include <cstddef>
#include <vector>

#include "semantelli/conflation.hpp"

namespace semantelli {

inline constexpr std::size_t kDefaultMaxCombinations = 8;

// A contiguous window [start, end) of the conflated query.
struct QueryCombination {
  KeywordSequence keywords;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - start; }
  bool operator==(const QueryCombination&) const = default;
};

/// Every contiguous window of `query`, longest first, then by start index,
/// truncated to `max_combinations`. The full query is always the first
/// entry. Throws Error{EmptyQuery} for an empty query and
/// Error{InvalidArgument} when max_combinations is zero.
std::vector<QueryCombination> generate_combinations(const KeywordSequence& query,
                                                    std::size_t max_combinations);

}  // namespace semantelli
