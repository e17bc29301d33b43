#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semantelli/engine_gateway.hpp"
#include "semantelli/engine_registry.hpp"

namespace semantelli {

struct Provenance {
  std::string engine_id;
  std::size_t engine_rank = 0;

  auto operator<=>(const Provenance&) const = default;
};

/// One deduplicated result. Display fields come from the representative
/// copy; provenance lists every (engine, rank) that returned the URL.
struct MergedResult {
  std::string canonical_url;
  std::string url;
  std::string title;
  std::string snippet;
  Vertical vertical = Vertical::Web;
  std::optional<Timestamp> timestamp;
  std::optional<std::string> image_url;
  std::string representative_engine;
  std::size_t representative_rank = 0;
  std::vector<Provenance> provenance;

  bool operator==(const MergedResult&) const = default;
};

/// Lowercases scheme and host, drops default ports, an empty-path trailing
/// slash and the fragment. Path and query are kept verbatim.
/// Throws Error{InvalidUrl}.
std::string normalize_url(std::string_view url);

struct MergeDiagnostics {
  std::size_t invalid_urls = 0;
  std::size_t wrong_vertical = 0;
  std::size_t failed_outcomes = 0;
};

struct MergeOutput {
  /// Ordered by canonical_url.
  std::vector<MergedResult> results;
  MergeDiagnostics diagnostics;
};

/// Temporary per-query buffer. Outcomes may be added from several threads;
/// merge() is called once all of them have arrived.
class ResultBuffer {
 public:
  explicit ResultBuffer(std::optional<Vertical> vertical = std::nullopt) : vertical_(vertical) {}

  void add(FetchOutcome outcome);
  void add(std::vector<FetchOutcome> outcomes);
  const std::vector<FetchOutcome>& outcomes() const noexcept { return outcomes_; }

  MergeOutput merge(const Registry& registry) const;

 private:
  std::optional<Vertical> vertical_;
  mutable std::mutex mutex_;
  std::vector<FetchOutcome> outcomes_;
};

/// Groups raw results by canonical URL. The representative copy is the one
/// from the engine with the highest initial weight, then the lower engine
/// rank, then the smaller engine id. Failed outcomes, invalid URLs and
/// results outside `vertical` (when given) are dropped and tallied.
MergeOutput merge(const std::vector<FetchOutcome>& outcomes, const Registry& registry,
                  std::optional<Vertical> vertical = std::nullopt);

}  // namespace semantelli
