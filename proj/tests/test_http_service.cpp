#include <doctest.h>

#include <httplib.h>

#include "semantelli/error.hpp"
#include "semantelli/http_service.hpp"
#include "test_support.hpp"

using namespace semantelli;
using nlohmann::json;

namespace {

std::shared_ptr<SearchService> shipped_service() {
  ServiceConfig config;
  config.fixtures = testing::source_dir() / "fixtures";
  return SearchService::from_config(config);
}

}  // namespace

TEST_CASE("HTTP endpoints") {
  HttpService service(shipped_service());
  const int port = service.start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);

  SUBCASE("healthz") {
    auto res = client.Get("/healthz");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body)["status"] == "ok");
  }
  SUBCASE("engines") {
    auto res = client.Get("/api/engines");
    REQUIRE(res);
    const auto body = json::parse(res->body);
    REQUIRE(body["engines"].size() == 3);
    CHECK(body["engines"][0]["id"] == "duckduckgo");
    CHECK(body["engines"][0]["initial_weight"] == 0.3);
  }
  SUBCASE("search") {
    auto res = client.Get("/api/search?q=Barack%20Obama&type=web&limit=5");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Content-Type") == "application/json");
    const auto body = json::parse(res->body);
    CHECK(body["query_keywords"] == json::array({"barack", "obama"}));
    CHECK(body["vertical"] == "web");
    REQUIRE(body["items"].size() == 5);
    const auto& first = body["items"][0];
    CHECK(first["scores"].contains("keyword_count"));
    CHECK(first["scores"].contains("sequence_score"));
    CHECK(first["scores"].contains("tiebreak_score"));
    CHECK(first.contains("provenance"));
    CHECK(body["engine_outcomes"].size() == 3);
  }
  SUBCASE("news over the wire is newest first") {
    auto res = client.Get("/api/search?q=Barack+Obama&type=news");
    REQUIRE(res);
    const auto items = json::parse(res->body)["items"];
    REQUIRE(items.size() > 2);
    for (std::size_t i = 1; i < items.size(); ++i)
      CHECK(items[i - 1]["timestamp"].get<std::string>() >= items[i]["timestamp"].get<std::string>());
  }
  SUBCASE("images carry image_url") {
    auto res = client.Get("/api/search?q=Barack+Obama&type=image");
    REQUIRE(res);
    for (const auto& item : json::parse(res->body)["items"]) CHECK(item.contains("image_url"));
  }
  SUBCASE("error mapping") {
    auto empty = client.Get("/api/search?q=&type=web");
    REQUIRE(empty);
    CHECK(empty->status == 400);
    CHECK(json::parse(empty->body)["error"] == "EmptyQuery");

    auto missing = client.Get("/api/search");
    REQUIRE(missing);
    CHECK(missing->status == 400);

    CHECK(client.Get("/api/search?q=obama&type=video")->status == 400);
    CHECK(client.Get("/api/search?q=obama&limit=0")->status == 400);
    CHECK(client.Get("/api/search?q=obama&limit=abc")->status == 400);
    CHECK(client.Get("/api/search?q=obama&combinations=maybe")->status == 400);
    CHECK(client.Get("/api/search?q=obama&engines=altavista")->status == 400);
    CHECK(client.Get("/api/search?q=obama&engines=hakia,sensebot&combinations=true")->status == 200);
  }
  service.stop();
}

TEST_CASE("HTTP status for backend failures") {
  CHECK(http_status(ErrorCode::EmptyQuery) == 400);
  CHECK(http_status(ErrorCode::AllEnginesFailed) == 502);
  CHECK(http_status(ErrorCode::NoEnginesEnabled) == 503);

  testing::TempDir empty;
  auto registry = std::make_shared<const Registry>(testing::table1_registry());
  auto search = std::make_shared<SearchService>(registry, StopWordList::english(),
                                                make_adapters(*registry, empty.path(), false));
  HttpService service(search);
  const int port = service.start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/search?q=obama");
  REQUIRE(res);
  CHECK(res->status == 502);
  CHECK(json::parse(res->body)["error"] == "AllEnginesFailed");

  auto engines = registry->engines();
  for (auto& e : engines) e.enabled = false;
  search->replace_registry(std::make_shared<const Registry>(Registry(engines, {})));
  CHECK(client.Get("/api/search?q=obama")->status == 503);
}

TEST_CASE("occupied port is a BindError") {
  HttpService first(shipped_service());
  const int port = first.start("127.0.0.1", 0);
  HttpService second(shipped_service());
  try {
    second.bind("127.0.0.1", port);
    FAIL("expected BindError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BindError);
  }
}

TEST_CASE("static assets are served under /") {
  testing::TempDir dir;
  testing::write_file(dir / "index.html", "<html>semantelli</html>");
  HttpService service(shipped_service(), dir.path());
  const int port = service.start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/index.html");
  REQUIRE(res);
  CHECK(res->body == "<html>semantelli</html>");
  CHECK(client.Get("/healthz")->status == 200);
}

TEST_CASE("stop lets an in-flight request finish") {
  testing::TempDir dir;
  for (const char* id : {"duckduckgo", "hakia", "sensebot"})
    testing::write_fixture(dir.path(), id, "web",
                           json{{"latency_ms", 300}, {"results", json::array({testing::record("a", "https://a.com", "obama")})}});
  auto registry = std::make_shared<const Registry>(testing::table1_registry());
  auto search =
      std::make_shared<SearchService>(registry, StopWordList::english(), make_adapters(*registry, dir.path(), false));
  HttpService service(search);
  const int port = service.start("127.0.0.1", 0);

  std::optional<int> status;
  std::thread request([&] {
    httplib::Client client("127.0.0.1", port);
    if (auto res = client.Get("/api/search?q=obama")) status = res->status;
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(100));
  service.stop();
  request.join();
  CHECK(status == 200);
}
