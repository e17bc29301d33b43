#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semantelli/engine_registry.hpp"
#include "semantelli/query_combinator.hpp"
#include "semantelli/types.hpp"

namespace semantelli {

using Millis = std::chrono::milliseconds;

inline constexpr Millis kDefaultEngineDeadline{2000};
inline constexpr Millis kDeadlineGrace{250};
inline constexpr std::size_t kDefaultEngineLimit = 10;

struct RawResult {
  std::string title;
  std::string url;
  std::string snippet;
  std::string engine_id;
  std::size_t engine_rank = 0;
  Vertical vertical = Vertical::Web;
  std::optional<Timestamp> timestamp;
  std::optional<std::string> image_url;

  bool operator==(const RawResult&) const = default;
};

struct EngineQuery {
  QueryCombination combination;
  Vertical vertical = Vertical::Web;
  std::size_t limit = kDefaultEngineLimit;
};

enum class FetchFailureKind { Timeout, TransportError, ParseError, Unsupported };

std::string_view to_string(FetchFailureKind kind) noexcept;

struct FetchFailure {
  FetchFailureKind kind;
  std::string detail;

  bool operator==(const FetchFailure&) const = default;
};

/// The result of one engine fetch: either a ranked result list or a
/// failure, never both.
struct FetchOutcome {
  std::string engine_id;
  std::variant<std::vector<RawResult>, FetchFailure> payload;
  Millis elapsed{0};
  /// Joined keywords of the combination that was sent.
  std::string query;

  bool ok() const noexcept { return std::holds_alternative<std::vector<RawResult>>(payload); }
  const std::vector<RawResult>& results() const { return std::get<std::vector<RawResult>>(payload); }
  const FetchFailure& failure() const { return std::get<FetchFailure>(payload); }
};

/// One backend. Implementations must be safe to call concurrently and must
/// not throw: every failure is reported through the outcome.
class EngineAdapter {
 public:
  virtual ~EngineAdapter() = default;
  virtual FetchOutcome fetch(const EngineDescriptor& engine, const EngineQuery& q, Millis deadline) const = 0;
};

/// Replays recorded corpora from <root>/<engine_id>/<vertical>.json.
///
/// A fixture file is either a top-level array of result records, or an
/// object {"results": [...], "latency_ms": N, "fail": "..."} where
/// latency_ms delays the reply and fail injects a failure ("timeout",
/// "transport", "parse", or true for "transport"). The same file is
/// returned for every query; records keep their file order as engine rank.
class FixtureEngine final : public EngineAdapter {
 public:
  explicit FixtureEngine(std::filesystem::path root) : root_(std::move(root)) {}

  FetchOutcome fetch(const EngineDescriptor& engine, const EngineQuery& q, Millis deadline) const override;

 private:
  std::filesystem::path root_;
};

/// Generic HTTP GET adapter driven by an engine's LiveAdapterConfig.
class HttpEngine final : public EngineAdapter {
 public:
  FetchOutcome fetch(const EngineDescriptor& engine, const EngineQuery& q, Millis deadline) const override;
};

/// Maps a JSON document to RawResults using `config`'s field paths.
/// Records without a title, url, or snippet are skipped; records whose
/// vertical-required field is missing are skipped as well. Throws
/// Error{ParseError} when the body is not JSON or the result list is absent.
std::vector<RawResult> map_live_response(std::string_view body, const LiveAdapterConfig& config,
                                         const std::string& engine_id, Vertical vertical, std::size_t limit);

/// Parses one fixture file's content. Throws Error{ParseError} naming the
/// offending record.
struct FixtureFile {
  std::vector<RawResult> results;
  Millis latency{0};
  std::optional<FetchFailureKind> fail;
};
FixtureFile parse_fixture(std::string_view text, const std::string& engine_id, Vertical vertical,
                          std::string_view source);

using AdapterMap = std::map<std::string, std::shared_ptr<const EngineAdapter>, std::less<>>;

/// Runs one fetch per engine concurrently. Outcomes come back in
/// `engines` order. An engine that has not answered by deadline + grace is
/// reported as Timeout; its worker finishes in the background.
/// Throws Error{InvalidArgument} when `engines` is empty.
std::vector<FetchOutcome> fan_out(const PriorityAssignment& engines, const Registry& registry,
                                  const AdapterMap& adapters, const EngineQuery& q,
                                  Millis per_engine_deadline = kDefaultEngineDeadline);

}  // namespace semantelli
