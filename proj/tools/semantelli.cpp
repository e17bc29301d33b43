// semantelli: command-line front end for the meta-search pipeline.
//
//   semantelli search "Barack Obama" --type news --output json
//   semantelli serve --port 8080
//   semantelli engines list

#include <csignal>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <pthread.h>

#include <CLI11.hpp>

#include "semantelli/http_service.hpp"
#include "semantelli/json_codec.hpp"
#include "semantelli/search_service.hpp"

namespace {

using namespace semantelli;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEmptyQuery = 3;
constexpr int kExitAllEnginesFailed = 4;
constexpr int kExitNoEngines = 5;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyQuery: return kExitEmptyQuery;
    case ErrorCode::AllEnginesFailed: return kExitAllEnginesFailed;
    case ErrorCode::NoEnginesEnabled: return kExitNoEngines;
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownEngine: return kExitUsage;
    default: return kExitFailure;
  }
}

struct SourceOptions {
  std::string seid;
  std::string fixtures;
  std::string stop_words;
  bool live = false;
  long deadline_ms = kDefaultEngineDeadline.count();
};

std::string env_or(const char* name, const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* v = std::getenv(name);
  return v ? v : "";
}

ServiceConfig make_config(const SourceOptions& src) {
  ServiceConfig config;
  if (auto seid = env_or("SEMANTELLI_SEID", src.seid); !seid.empty()) config.seid = seid;
  if (!src.stop_words.empty()) config.stop_words = src.stop_words;
  auto fixtures = env_or("SEMANTELLI_FIXTURES", src.fixtures);
  config.fixtures = fixtures.empty() ? SEMANTELLI_DEFAULT_FIXTURES : fixtures;
  config.live = src.live;
  config.options.engine_deadline = Millis(src.deadline_ms);
  return config;
}

void add_source_flags(CLI::App* cmd, SourceOptions& src) {
  cmd->add_option("--seid", src.seid, "SEID file (engines and domain table); env SEMANTELLI_SEID");
  cmd->add_option("--fixtures", src.fixtures, "fixture corpus root; env SEMANTELLI_FIXTURES");
  cmd->add_option("--stopwords", src.stop_words, "stop-word list file");
  cmd->add_flag("--live", src.live, "query engines that have a live adapter config over HTTP");
  cmd->add_option("--deadline-ms", src.deadline_ms, "per-engine deadline in milliseconds")
      ->check(CLI::PositiveNumber);
}

std::string truncate(const std::string& s, std::size_t width) {
  if (s.size() <= width) return s;
  return s.substr(0, width - 3) + "...";
}

void print_table(const SearchResponse& resp, std::ostream& out) {
  out << "query keywords: " << resp.query_keywords.joined() << "  (" << to_string(resp.vertical) << ")\n";
  out << std::left << std::setw(4) << "#" << std::setw(4) << "C" << std::setw(4) << "S" << std::setw(8) << "T"
      << std::setw(12) << "engine";
  if (resp.vertical == Vertical::News) out << std::setw(22) << "timestamp";
  out << "title / url\n";
  std::size_t n = 0;
  for (const auto& item : resp.items) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(4) << item.tiebreak_score;
    out << std::left << std::setw(4) << ++n << std::setw(4) << item.keyword_count << std::setw(4)
        << item.sequence_score << std::setw(8) << t.str() << std::setw(12) << item.result.representative_engine;
    if (resp.vertical == Vertical::News)
      out << std::setw(22) << (item.result.timestamp ? format_timestamp(*item.result.timestamp) : "-");
    out << truncate(item.result.title, 60) << "\n";
    out << std::string(resp.vertical == Vertical::News ? 54 : 32, ' ') << item.result.url << "\n";
  }
  for (const auto& s : resp.engine_outcomes) {
    if (s.ok) continue;
    out << "engine " << s.engine_id << ": " << to_string(*s.failure) << " (" << s.detail << ")\n";
  }
  out << resp.items.size() << " results in " << resp.elapsed.count() << " ms\n";
}

int run_serve(const SourceOptions& src, int port, const std::string& host, const std::string& webui) {
  // Signals are taken synchronously by a dedicated thread so shutdown runs
  // outside signal-handler context.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto service = SearchService::from_config(make_config(src));
  std::optional<std::filesystem::path> static_dir;
  if (auto dir = env_or("SEMANTELLI_WEBUI", webui); !dir.empty()) static_dir = dir;
  HttpService http(service, static_dir);
  const int bound = http.bind(host, port);
  std::cerr << "semantelli listening on http://" << host << ":" << bound << "\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "shutting down\n";
    http.stop();
  });
  http.run();
  // run() also returns if the listener fails; wake the waiter in that case.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantelli: meta-search over pluggable engines with snippet-analysis ranking"};
  app.require_subcommand(1);

  SourceOptions src;

  auto* search = app.add_subcommand("search", "run one query and print the ranked results");
  std::string query;
  std::string type = "web";
  std::size_t limit = 20;
  std::string engines;
  bool combinations = false;
  std::string output = "table";
  search->add_option("query", query, "query text")->required();
  search->add_option("--type", type, "vertical")->check(CLI::IsMember({"web", "image", "images", "news"}));
  search->add_option("--limit", limit, "maximum results")->check(CLI::PositiveNumber);
  search->add_option("--engines", engines, "comma-separated engine ids");
  search->add_flag("--combinations", combinations, "also dispatch contiguous keyword windows");
  search->add_option("--output", output, "output format")->check(CLI::IsMember({"table", "json"}));
  add_source_flags(search, src);

  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  int port = 8080;
  std::string host = "0.0.0.0";
  std::string webui;
  auto* port_opt = serve->add_option("--port", port, "listen port; env SEMANTELLI_PORT")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "listen address");
  serve->add_option("--webui", webui, "directory of static UI assets served under /; env SEMANTELLI_WEBUI");
  add_source_flags(serve, src);

  auto* engines_cmd = app.add_subcommand("engines", "inspect the engine registry");
  engines_cmd->require_subcommand(1);
  auto* list = engines_cmd->add_subcommand("list", "list registered engines");
  std::string list_output = "table";
  list->add_option("--seid", src.seid, "SEID file; env SEMANTELLI_SEID");
  list->add_option("--output", list_output, "output format")->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*search) {
      auto service = SearchService::from_config(make_config(src));
      SearchRequest req;
      req.query = query;
      req.vertical = parse_vertical(type);
      req.limit = limit;
      req.use_combinations = combinations;
      if (!engines.empty()) {
        std::vector<std::string> ids;
        std::stringstream in(engines);
        for (std::string id; std::getline(in, id, ',');)
          if (!id.empty()) ids.push_back(id);
        req.engines = ids;
      }
      const auto resp = service->search(req);
      if (output == "json") {
        std::cout << to_json(resp).dump(2) << "\n";
      } else {
        print_table(resp, std::cout);
      }
      return kExitOk;
    }
    if (*serve) {
      if (port_opt->count() == 0) {
        if (const char* env = std::getenv("SEMANTELLI_PORT")) port = std::atoi(env);
      }
      return run_serve(src, port, host, webui);
    }
    if (*list) {
      ServiceConfig config = make_config(src);
      const Registry registry = config.seid ? Registry::load(*config.seid) : Registry::builtin();
      if (list_output == "json") {
        std::cout << engines_to_json(registry).dump(2) << "\n";
        return kExitOk;
      }
      std::cout << std::left << std::setw(12) << "id" << std::setw(14) << "name" << std::setw(8) << "W_i"
                << std::setw(9) << "enabled" << "verticals\n";
      for (const auto& e : registry.engines()) {
        std::string verticals;
        for (auto v : e.supported_verticals) verticals += (verticals.empty() ? "" : ",") + std::string(to_string(v));
        std::cout << std::left << std::setw(12) << e.id << std::setw(14) << e.display_name << std::setw(8)
                  << e.initial_weight << std::setw(9) << (e.enabled ? "yes" : "no") << verticals << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return kExitUsage;
}
