#include <doctest.h>

#include <algorithm>
#include <random>

#include "semantelli/engine_registry.hpp"
#include "semantelli/error.hpp"
#include "test_support.hpp"

using namespace semantelli;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ConfigError;
}

std::vector<std::string> order(const PriorityAssignment& p) {
  std::vector<std::string> out;
  for (const auto& e : p) out.push_back(e.engine_id);
  return out;
}

const char* kTwoEngines = R"({
  "engines": [
    {"id": "duckduckgo", "display_name": "DuckDuckGo", "initial_weight": 0.3},
    {"id": "hakia", "display_name": "Hakia", "initial_weight": 0.2, "domain_boosts": {"news": 0.5},
     "supported_verticals": ["web", "news"]}
  ],
  "domains": [{"keyword": "election", "domain": "news"}]
})";

}  // namespace

TEST_CASE("shipped SEID reproduces the initial weights") {
  const auto registry = Registry::load(testing::source_dir() / "data/seid.json");
  REQUIRE(registry.engines().size() == 3);
  CHECK(registry.at("duckduckgo").initial_weight == 0.3);
  CHECK(registry.at("hakia").initial_weight == 0.2);
  CHECK(registry.at("sensebot").initial_weight == 0.1);
  CHECK(registry.at("duckduckgo").live.has_value());
  CHECK_FALSE(registry.at("sensebot").supports(Vertical::Image));
  CHECK(Registry::builtin().engines() == registry.engines());
}

TEST_CASE("load_registry errors") {
  testing::TempDir dir;
  CHECK(code_of([&] { Registry::load(dir / "nope.json"); }) == ErrorCode::NotFound);

  testing::write_file(dir / "dup.json", R"({"engines": [{"id": "x", "initial_weight": 0.1},
                                                     {"id": "x", "initial_weight": 0.2}]})");
  CHECK(code_of([&] { Registry::load(dir / "dup.json"); }) == ErrorCode::DuplicateEngineId);

  testing::write_file(dir / "syntax.json", "{\n  \"engines\": [\n    {\"id\": \"x\",, }\n  ]\n}");
  try {
    Registry::load(dir / "syntax.json");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.detail().find("line 3") != std::string::npos);
  }

  testing::write_file(dir / "field.json", R"({"engines": [{"id": "x", "initial_weight": "heavy"}]})");
  try {
    Registry::load(dir / "field.json");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.detail().find("$.engines[0].initial_weight") != std::string::npos);
  }

  CHECK(code_of([] { Registry::parse(R"({"engines": [{"id": "x", "initial_weight": 0}]})"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { Registry::parse(R"({"engines": [{"id": "x", "initial_weight": 0.1,
       "domain_boosts": {"news": -1}}]})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { Registry::parse(R"({"engines": [{"id": "x", "initial_weight": 0.1,
       "supported_verticals": ["video"]}]})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { Registry::parse(R"({"domains": []})"); }) == ErrorCode::ParseError);
}

TEST_CASE("save and load round trip") {
  testing::TempDir dir;
  const auto original = Registry::parse(kTwoEngines);
  original.save(dir / "seid.json");
  const auto loaded = Registry::load(dir / "seid.json");
  CHECK(loaded.engines() == original.engines());
  CHECK(loaded.domains() == original.domains());
}

TEST_CASE("assign_priorities examples") {
  const auto& builtin = Registry::builtin();
  const auto p = assign_priorities(KeywordSequence({"barack", "obama"}), builtin);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == EnginePriority{"duckduckgo", 0.3});
  CHECK(p[1] == EnginePriority{"hakia", 0.2});
  CHECK(p[2] == EnginePriority{"sensebot", 0.1});

  auto disabled = builtin.engines();
  for (auto& e : disabled) e.enabled = false;
  const Registry none(disabled, {});
  CHECK(code_of([&] { assign_priorities(KeywordSequence({"obama"}), none); }) == ErrorCode::NoEnginesEnabled);

  // "election" is conflated to "elect" both in the domain table and the query.
  const auto boosted = Registry::parse(kTwoEngines);
  CHECK(boosted.domain_tag("elect") == std::optional<std::string>("news"));
  const auto q = conflate("election results", StopWordList::english());
  const auto bp = assign_priorities(q, boosted);
  REQUIRE(bp.size() == 2);
  CHECK(bp[0].engine_id == "hakia");
  CHECK(bp[0].priority == doctest::Approx(0.2 + 0.5).epsilon(1e-15));
  CHECK(bp[1] == EnginePriority{"duckduckgo", 0.3});
}

TEST_CASE("assign_priorities uses the maximum boost across keywords") {
  EngineDescriptor a{"a", "A", 0.1, {{"news", 0.2}, {"image", 0.4}}};
  EngineDescriptor b{"b", "B", 0.3, {}};
  const Registry r({a, b}, {{"election", "news"}, {"photo", "image"}});
  const auto p = assign_priorities(KeywordSequence({"elect", "photo", "unmapped"}), r);
  CHECK(order(p) == std::vector<std::string>{"a", "b"});
  CHECK(p[0].priority == doctest::Approx(0.5));
}

TEST_CASE("priority ordering properties") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<EngineDescriptor> engines;
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < n; ++i) {
      EngineDescriptor e;
      e.id = "e" + std::to_string(i);
      // Coarse weights so ties occur.
      e.initial_weight = std::max(0.25, std::round(weight(rng) * 4) / 4);
      e.enabled = (rng() % 5) != 0;
      engines.push_back(e);
    }
    if (std::none_of(engines.begin(), engines.end(), [](const auto& e) { return e.enabled; })) engines[0].enabled = true;

    const KeywordSequence q({"obama"});
    const auto p = assign_priorities(q, Registry(engines, {}));

    // Equals ordering by W_i descending, id ascending, enabled only.
    auto expected = engines;
    std::erase_if(expected, [](const auto& e) { return !e.enabled; });
    std::sort(expected.begin(), expected.end(), [](const auto& x, const auto& y) {
      return x.initial_weight != y.initial_weight ? x.initial_weight > y.initial_weight : x.id < y.id;
    });
    REQUIRE(p.size() == expected.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(p[i].engine_id == expected[i].id);
      CHECK(p[i].priority > 0);
      if (i > 0) CHECK(p[i - 1].priority >= p[i].priority);
    }

    // Insertion order does not matter.
    auto shuffled = engines;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(assign_priorities(q, Registry(shuffled, {})) == p);

    // Scaling every weight keeps the order.
    auto scaled = engines;
    for (auto& e : scaled) e.initial_weight *= 0.5;
    CHECK(order(assign_priorities(q, Registry(scaled, {}))) == order(p));
  }
}

TEST_CASE("registry cell swaps atomically") {
  auto first = std::make_shared<const Registry>(Registry::builtin());
  RegistryCell cell(first);
  const auto held = cell.get();
  cell.replace(std::make_shared<const Registry>(Registry::parse(kTwoEngines)));
  CHECK(held->engines().size() == 3);
  CHECK(cell.get()->engines().size() == 2);
}
