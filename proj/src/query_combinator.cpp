#include "semantelli/query_combinator.hpp"

#include <algorithm>

#include "semantelli/error.hpp"

namespace semantelli {

std::vector<QueryCombination> generate_combinations(const KeywordSequence& query,
                                                    std::size_t max_combinations) {
  if (query.empty()) throw Error(ErrorCode::EmptyQuery, "query has no keywords");
  if (max_combinations == 0) throw Error(ErrorCode::InvalidArgument, "max_combinations must be positive");

  const std::size_t n = query.count();
  const auto& words = query.keywords();
  std::vector<QueryCombination> out;
  out.reserve(std::min(max_combinations, n * (n + 1) / 2));
  for (std::size_t len = n; len >= 1 && out.size() < max_combinations; --len) {
    for (std::size_t start = 0; start + len <= n && out.size() < max_combinations; ++start) {
      std::vector<std::string> window(words.begin() + static_cast<std::ptrdiff_t>(start),
                                      words.begin() + static_cast<std::ptrdiff_t>(start + len));
      out.push_back({KeywordSequence(std::move(window)), start, start + len});
    }
  }
  return out;
}

}  // namespace semantelli
