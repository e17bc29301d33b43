#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semantelli/conflation.hpp"
#include "semantelli/types.hpp"

namespace semantelli {

// HTTP mapping for the generic live adapter. Field paths are JSON pointers
// ("/Text") evaluated against each record of the result list found at
// `results_path`. `{query}` in the URL template is replaced by the
// percent-encoded conflated query, `{limit}` by the result limit.
struct LiveAdapterConfig {
  std::string url_template;
  std::string results_path;
  std::string title_path = "/title";
  std::string url_path = "/url";
  std::string snippet_path = "/snippet";
  std::string timestamp_path = "/timestamp";
  std::string image_url_path = "/image_url";

  bool operator==(const LiveAdapterConfig&) const = default;
};

struct EngineDescriptor {
  std::string id;
  std::string display_name;
  double initial_weight = 0.0;
  std::map<std::string, double> domain_boosts;
  bool enabled = true;
  std::set<Vertical> supported_verticals{Vertical::Web, Vertical::Image, Vertical::News};
  std::optional<LiveAdapterConfig> live;

  bool supports(Vertical v) const { return supported_verticals.contains(v); }
  bool operator==(const EngineDescriptor&) const = default;
};

struct EnginePriority {
  std::string engine_id;
  double priority = 0.0;

  bool operator==(const EnginePriority&) const = default;
};

// Enabled engines ordered by priority descending, ties by id ascending.
using PriorityAssignment = std::vector<EnginePriority>;

/// The search-engine information database: engine descriptors plus a
/// keyword -> domain lookup table. Immutable once built.
class Registry {
 public:
  Registry() = default;
  /// Throws Error{DuplicateEngineId} or Error{InvalidArgument} when a
  /// descriptor violates its invariants. Domain keywords are conflated
  /// with `stops` so they match conflated query keywords.
  Registry(std::vector<EngineDescriptor> engines, const std::map<std::string, std::string>& domains,
           const StopWordList& stops = StopWordList::english());

  /// Parses SEID JSON. `source` names the input in error messages.
  static Registry parse(std::string_view text, std::string_view source = "<seid>");
  /// Throws Error{NotFound} when the file is missing, Error{ParseError}
  /// with line or field information when it is malformed.
  static Registry load(const std::filesystem::path& path);
  /// The shipped default (data/seid.json compiled in).
  static const Registry& builtin();

  std::string to_json() const;
  void save(const std::filesystem::path& path) const;

  /// Engines in id order.
  const std::vector<EngineDescriptor>& engines() const noexcept { return engines_; }
  const EngineDescriptor* find(std::string_view id) const;
  /// Throws Error{UnknownEngine}.
  const EngineDescriptor& at(std::string_view id) const;
  /// Conflated keyword -> domain tag.
  const std::map<std::string, std::string>& domains() const noexcept { return domains_; }
  std::optional<std::string> domain_tag(std::string_view keyword) const;

  bool empty() const noexcept { return engines_.empty(); }

 private:
  std::vector<EngineDescriptor> engines_;
  std::map<std::string, std::string> domains_;
  std::map<std::string, std::string> raw_domains_;
};

/// priority(engine) = initial_weight + max over query keywords of the
/// engine's boost for that keyword's domain (0 when nothing matches).
/// Throws Error{NoEnginesEnabled}.
PriorityAssignment assign_priorities(const KeywordSequence& query, const Registry& registry);

/// Shared, swappable registry. Readers get a snapshot; replace() installs a
/// new value without disturbing searches already holding the old one.
class RegistryCell {
 public:
  explicit RegistryCell(std::shared_ptr<const Registry> initial) : current_(std::move(initial)) {}

  std::shared_ptr<const Registry> get() const {
    std::lock_guard lock(mutex_);
    return current_;
  }
  void replace(std::shared_ptr<const Registry> next) {
    std::lock_guard lock(mutex_);
    current_ = std::move(next);
  }

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const Registry> current_;
};

}  // namespace semantelli
