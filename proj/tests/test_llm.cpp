#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "gag/llm/backend.hpp"
#include "gag/llm/llm_policy.hpp"
#include "gag/llm/parse.hpp"
#include "gag/scenario/scenario.hpp"

using namespace gag;

namespace {

std::filesystem::path temp_file(const char* tag) {
  auto p = std::filesystem::temp_directory_path() /
           (std::string("gag_llm_") + tag + ".jsonl");
  std::filesystem::remove(p);
  return p;
}

// Backend scripted per call, for the repair-retry path.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies)
      : replies_(std::move(replies)) {}

  std::vector<std::vector<float>> embed(
      const std::vector<std::string>& texts) override {
    HashingEncoder enc(16);
    std::vector<std::vector<float>> out;
    for (const std::string& t : texts) out.push_back(enc.encode(t));
    return out;
  }
  std::size_t embed_dim() override { return 16; }
  std::size_t calls() const { return next_; }

 protected:
  std::string chat_impl(const std::string&, const std::string&) override {
    if (next_ >= replies_.size()) return replies_.back();
    return replies_[next_++];
  }

 private:
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
};

}  // namespace

TEST_CASE("prompt hash is stable and separator-safe") {
  CHECK(chat_prompt_hash("sys", "user") == chat_prompt_hash("sys", "user"));
  CHECK(chat_prompt_hash("sys", "user") != chat_prompt_hash("sy", "suser"));
  CHECK(chat_prompt_hash("a", "bc") != chat_prompt_hash("ab", "c"));
}

TEST_CASE("mock backend is a pure function of seed and prompt") {
  const std::string system = "You decide.";
  const std::string user =
      "Please give me a list of 3 different authors with name, topics, "
      "expertise. Answer with a bracketed list of records.";

  MockBackend a(7), b(7), c(8);
  std::string first = a.chat(system, user);
  // Interleave unrelated traffic, then repeat: the answer cannot drift.
  a.chat(system, "Answer with only the word active or idle\nLabel: core");
  CHECK(a.chat(system, user) == first);
  CHECK(b.chat(system, user) == first);
  CHECK(c.chat(system, user) != first);
}

TEST_CASE("mock replies parse under the scenario grammar") {
  const ScenarioSpec& sc = scenario_by_id("SC");
  MockBackend mock(5);

  SUBCASE("profile records") {
    std::string reply = mock.chat(
        sc.profile_system,
        "Please give me a list of 4 different authors with name and topics. "
        "Answer with a bracketed list of records.");
    std::vector<AgentProfile> got = parse_profile_list(reply, sc);
    CHECK(got.size() == 4);
    for (const AgentProfile& p : got) {
      CHECK(!p.name.empty());
      CHECK(!p.topics.empty());
    }
  }

  SUBCASE("query strings") {
    std::string reply =
        mock.chat(sc.query_system,
                  "Topics: graphs; agents\nGive at most 3 queries. Answer "
                  "with a bracketed list of strings.");
    std::vector<std::string> qs = parse_queries(reply);
    CHECK(!qs.empty());
    CHECK(qs.size() <= 3);
  }

  SUBCASE("activation answers with one word") {
    std::string active = mock.chat(
        sc.profile_system,
        "Decide for this round. Answer with only the word active or idle.\n"
        "Label: core");
    CHECK((active == "active" || active == "idle"));
  }

  SUBCASE("reflection json") {
    std::string reply = mock.chat(
        sc.query_system,
        "Recent actions:\n- round 1 citation: graphs\n- round 1 citation: "
        "agents\nSummarize as JSON with \"summary\" and \"keywords\".");
    Reflection r = parse_reflection(reply);
    CHECK(!r.summary.empty());
    CHECK(!r.keywords.empty());
  }

  SUBCASE("paper action cites only observed titles") {
    std::string reply = mock.chat(
        sc.action_system,
        "You read these papers:\nTitle: Graph Growth\nTitle: Agent Loops\n"
        "Reply as JSON with \"title\", \"keywords\", \"abstract\", "
        "\"citations\".");
    ParsedAction acts = parse_action(reply, sc, 1, 0, "A",
                                     {10, 11},
                                     {"Graph Growth", "Agent Loops"});
    CHECK(acts.actions.new_item.has_value());
    CHECK(acts.dropped == 0);
    for (const auto& [item, kind] : acts.actions.targets) {
      CHECK((item == 10 || item == 11));
      CHECK(kind == ActionKind::Citation);
    }
  }
}

TEST_CASE("action parsing") {
  const ScenarioSpec& soc = scenario_by_id("SoC");
  const ScenarioSpec& tc = scenario_by_id("TC");

  SUBCASE("tweet actions resolve targets by key") {
    std::string reply = R"({
      "tweet": "hello graphs",
      "topics": ["graphs"],
      "actions": [
        {"type": "retweet", "target": "t77"},
        {"type": "follow", "target": "t99"},
        {"type": "reply", "target": "missing"}
      ]
    })";
    ParsedAction got =
        parse_action(reply, soc, 2, 5, "Bob", {3, 4}, {"t77", "t99"});
    REQUIRE(got.actions.new_item.has_value());
    CHECK(got.actions.new_item->get_or("tweet") == "hello graphs");
    CHECK(got.actions.new_item->get_or("user") == "Bob");
    CHECK(got.actions.new_item->get_or("tweet_id") == "t.r2.a5");
    REQUIRE(got.actions.targets.size() == 2);
    CHECK(got.actions.targets[0] ==
          std::pair<std::uint32_t, ActionKind>{3, ActionKind::Retweet});
    CHECK(got.actions.targets[1] ==
          std::pair<std::uint32_t, ActionKind>{4, ActionKind::Follow});
    CHECK(got.dropped == 1);
  }

  SUBCASE("unknown action types are dropped, not invented") {
    std::string reply =
        R"({"actions": [{"type": "teleport", "target": "t1"}]})";
    ParsedAction got = parse_action(reply, soc, 1, 0, "A", {9}, {"t1"});
    CHECK(got.actions.targets.empty());
    CHECK(got.dropped == 1);
  }

  SUBCASE("ratings map onto observed titles") {
    std::string reply = R"({"ratings": [
      {"title": "The Matrix", "score": 5},
      {"title": "Unknown Film", "score": 2}
    ]})";
    ParsedAction got =
        parse_action(reply, tc, 1, 0, "A", {42}, {"The Matrix"});
    REQUIRE(got.actions.targets.size() == 1);
    CHECK(got.actions.targets[0].first == 42);
    CHECK(got.actions.targets[0].second == ActionKind::Rating);
    CHECK(got.dropped == 1);
    CHECK(!got.actions.new_item.has_value());
  }

  SUBCASE("missing ratings array is a parse error") {
    CHECK_THROWS_AS(
        parse_action(R"({"other": 1})", tc, 1, 0, "A", {}, {}),
        ParseError);
  }

  SUBCASE("garbage is a parse error") {
    CHECK_THROWS_AS(parse_action("no json here", soc, 1, 0, "A", {}, {}),
                    ParseError);
    CHECK_THROWS_AS(parse_profile_list("[]", soc), ParseError);
    CHECK_THROWS_AS(parse_queries("nothing bracketed"), ParseError);
  }

  SUBCASE("target resolution ignores case and punctuation") {
    std::string reply =
        R"({"ratings": [{"title": "the  MATRIX!", "score": 3}]})";
    ParsedAction got =
        parse_action(reply, tc, 1, 0, "A", {42}, {"The Matrix"});
    REQUIRE(got.actions.targets.size() == 1);
    CHECK(got.actions.targets[0].first == 42);
  }
}

TEST_CASE("repair retries re-ask with a changed prompt") {
  ScriptedBackend scripted({"not parseable", "still bad", "[\"finally\"]"});

  SUBCASE("succeeds within budget") {
    std::vector<std::string> got = detail::chat_parsed(
        scripted, "sys", "ask", 2,
        [](const std::string& reply) { return parse_queries(reply); });
    CHECK(got == std::vector<std::string>{"finally"});
    CHECK(scripted.calls() == 3);
    // Each retry must carry a distinct user prompt.
    const std::vector<ChatExchange>& log = scripted.exchanges();
    REQUIRE(log.size() == 3);
    CHECK(log[0].user != log[1].user);
    CHECK(log[1].user != log[2].user);
  }

  SUBCASE("exhausted budget rethrows the parse error") {
    ScriptedBackend bad({"junk"});
    CHECK_THROWS_AS(detail::chat_parsed(
                        bad, "sys", "ask", 1,
                        [](const std::string& r) { return parse_queries(r); }),
                    ParseError);
    CHECK(bad.exchange_count() == 2);  // initial try + one retry
  }
}

TEST_CASE("exchange log round-trips through jsonl") {
  std::vector<ChatExchange> log = {
      {"aaaa", "sys", "user one", "reply one", 12},
      {"bbbb", "sys", "line\nbreaks \"quoted\"", "reply two", 0},
  };
  auto path = temp_file("exchanges");
  write_exchanges_jsonl(log, path);
  std::vector<ChatExchange> back = read_exchanges_jsonl(path);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].prompt_hash == log[i].prompt_hash);
    CHECK(back[i].system == log[i].system);
    CHECK(back[i].user == log[i].user);
    CHECK(back[i].response == log[i].response);
  }
  std::filesystem::remove(path);
}

TEST_CASE("replay backend replays strictly in recorded order") {
  MockBackend mock(3);
  const std::string user_a = "Answer with a bracketed list of strings. A";
  const std::string user_b = "Answer with a bracketed list of strings. B";
  std::string r1 = mock.chat("s", user_a);
  std::string r2 = mock.chat("s", user_a);  // same prompt, second draw
  std::string r3 = mock.chat("s", user_b);

  auto path = temp_file("replay");
  write_exchanges_jsonl(mock.exchanges(), path);

  ReplayBackend replay(path, 16);
  CHECK(replay.chat("s", user_b) == r3);  // order across prompts is free
  CHECK(replay.chat("s", user_a) == r1);  // within a prompt it is FIFO
  CHECK(replay.chat("s", user_a) == r2);
  CHECK_THROWS_AS(replay.chat("s", user_a), BackendError);
  CHECK_THROWS_AS(replay.chat("s", "never recorded"), BackendError);

  SUBCASE("embeddings come from the hashing encoder") {
    std::vector<std::vector<float>> rows = replay.embed({"graph agents"});
    HashingEncoder enc(16);
    CHECK(rows[0] == enc.encode("graph agents"));
  }
  std::filesystem::remove(path);
}

TEST_CASE("remote backend against a local server") {
  unsetenv("GAG_API_BASE");
  setenv("GAG_API_KEY", "test-key", 1);

  httplib::Server server;
  std::atomic<int> chat_calls{0};
  std::atomic<int> fail_calls{0};
  std::string seen_auth;

  server.Post("/v1/chat/completions",
              [&](const httplib::Request& req, httplib::Response& res) {
                ++chat_calls;
                seen_auth = req.get_header_value("Authorization");
                nlohmann::json body = nlohmann::json::parse(req.body);
                std::string user = body["messages"][1]["content"];
                nlohmann::json reply = {
                    {"choices",
                     {{{"message", {{"content", "echo: " + user}}}}}}};
                res.set_content(reply.dump(), "application/json");
              });
  server.Post("/v1/embeddings",
              [&](const httplib::Request&, httplib::Response& res) {
                nlohmann::json reply = {
                    {"data",
                     {{{"index", 0}, {"embedding", {3.0, 0.0, 4.0}}}}}};
                res.set_content(reply.dump(), "application/json");
              });
  server.Post("/flaky/chat/completions",
              [&](const httplib::Request&, httplib::Response& res) {
                ++fail_calls;
                res.status = 500;
              });
  server.Post("/denied/chat/completions",
              [&](const httplib::Request&, httplib::Response& res) {
                ++fail_calls;
                res.status = 403;
              });

  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread run([&server] { server.listen_after_bind(); });
  server.wait_until_ready();

  auto base = [port](const std::string& prefix) {
    return "http://127.0.0.1:" + std::to_string(port) + prefix;
  };

  SUBCASE("success path, bearer auth, chat echo") {
    RemoteConfig rc;
    rc.base_url = base("/v1");
    rc.model_name = "m";
    rc.embed_model_name = "e";
    RemoteBackend remote(rc);
    CHECK(remote.chat("sys", "ping") == "echo: ping");
    CHECK(seen_auth == "Bearer test-key");
    CHECK(remote.exchange_count() == 1);

    std::vector<std::vector<float>> rows = remote.embed({"x"});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == doctest::Approx(0.6f));  // 3-0-4 normalized
    CHECK(rows[0][2] == doctest::Approx(0.8f));
    CHECK(remote.embed_dim() == 3);
  }

  SUBCASE("server errors retry, then give up") {
    RemoteConfig rc;
    rc.base_url = base("/flaky");
    rc.model_name = "m";
    rc.max_retries = 2;
    rc.backoff_ms = 1;
    fail_calls = 0;
    RemoteBackend remote(rc);
    CHECK_THROWS_WITH_AS(remote.chat("sys", "u"),
                         doctest::Contains("after 3 attempts"),
                         RetriesExhausted);
    CHECK(fail_calls == 3);
  }

  SUBCASE("client errors fail immediately") {
    RemoteConfig rc;
    rc.base_url = base("/denied");
    rc.model_name = "m";
    rc.max_retries = 5;
    rc.backoff_ms = 1;
    fail_calls = 0;
    RemoteBackend remote(rc);
    CHECK_THROWS_AS(remote.chat("sys", "u"), HttpStatus);
    CHECK(fail_calls == 1);
  }

  SUBCASE("missing key is rejected before any request") {
    unsetenv("GAG_API_KEY");
    RemoteConfig rc;
    rc.base_url = base("/v1");
    CHECK_THROWS_AS(RemoteBackend{rc}, MissingApiKey);
    setenv("GAG_API_KEY", "test-key", 1);
  }

  server.stop();
  run.join();
}

TEST_CASE("backend factory") {
  BackendConfig cfg;
  cfg.kind = BackendConfig::Kind::Mock;
  cfg.seed = 2;
  std::unique_ptr<Backend> mock = make_backend(cfg, 32);
  CHECK(mock->embed_dim() == 32);

  CHECK(backend_kind_from("mock") == BackendConfig::Kind::Mock);
  CHECK(backend_kind_from("remote") == BackendConfig::Kind::Remote);
  CHECK(backend_kind_from("replay") == BackendConfig::Kind::Replay);
  CHECK_THROWS_AS(backend_kind_from("cloud"), ConfigError);
  CHECK(to_string(BackendConfig::Kind::Replay) == "replay");
}

TEST_CASE("llm policy drives a full decision cycle on the mock") {
  const ScenarioSpec& spec = scenario_by_id("SoC");
  MockBackend mock(11);
  LlmParams params;
  params.max_queries = 3;
  LlmPolicy policy(mock, params);

  BipartiteGraph g = make_graph(spec);
  g.add_actor("Name: Ada\nTopics: graphs", 0);
  AttrMap t{{"tweet_id", "t0"}, {"user", "Ada"}, {"tweet", "graphs are fun"},
            {"topics", "graphs"}};
  g.add_item(t, 0, 0);
  ItemSnapshot snap = g.snapshot(1);
  HashingEncoder enc(32);
  VectorIndex idx = index_items(snap, spec, enc);

  Rng rng = derive_rng(1, 1);
  ActorContext ctx{&spec, 0, 1, &rng, &idx, &snap};
  AgentProfile profile;
  profile.name = "Ada";
  profile.topics = {"graphs"};
  profile.fields.set("name", "Ada");
  profile.fields.set("topics", "graphs");
  AgentMemory memory;

  std::vector<std::string> queries = policy.make_queries(ctx, profile, memory);
  CHECK(!queries.empty());
  CHECK(queries.size() <= 3);

  std::vector<ScoredItem> hits = recall(idx, enc, queries[0], 5);
  Observation obs = assemble_observation({hits});
  ActionSet acts = policy.decide_actions(ctx, profile, memory, obs);
  // Every proposed target must point into the observation.
  for (const auto& [item, kind] : acts.targets) {
    CHECK(std::find(obs.unified.begin(), obs.unified.end(), item) !=
          obs.unified.end());
    CHECK(spec.has_kind(kind));
  }
}
