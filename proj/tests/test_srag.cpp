#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "gag/agent/profile.hpp"
#include "gag/core/graph.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/srag/embed.hpp"
#include "gag/srag/index.hpp"
#include "gag/srag/round.hpp"
#include "gag/util/rng.hpp"

using namespace gag;

namespace {

// Random word-salad corpus over a tiny alphabet so hash collisions and
// cosine ties actually occur.
std::vector<std::string> random_texts(std::size_t n, Rng& rng) {
  static const char* words[] = {"graph", "agent", "model", "text",
                                "round", "actor", "item",  "edge"};
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string t;
    std::size_t len = 1 + rng.below(6);
    for (std::size_t w = 0; w < len; ++w) {
      if (w) t += ' ';
      t += words[rng.below(8)];
    }
    out.push_back(t);
  }
  return out;
}

double dot(const std::vector<float>& a, const std::vector<float>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += double(a[i]) * b[i];
  return s;
}

// Brute-force top-k by (cosine desc, ordinal asc): re-encodes every stored
// text from scratch and full-sorts, sharing nothing with recall's stored
// rows or partial sort.
std::vector<std::uint32_t> oracle_topk(const VectorIndex& idx,
                                       const std::string& query,
                                       std::size_t k, std::size_t dim) {
  HashingEncoder enc(dim);
  std::vector<float> q = enc.encode(query);
  std::vector<std::pair<double, std::uint32_t>> scored;
  for (std::uint32_t i = 0; i < idx.size(); ++i)
    scored.emplace_back(dot(enc.encode(idx.texts[i]), q), idx.items[i]);
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < std::min(k, scored.size()); ++i)
    out.push_back(scored[i].second);
  return out;
}

BipartiteGraph tweet_graph(const std::vector<std::string>& texts) {
  BipartiteGraph g = make_graph(scenario_by_id("SoC"));
  g.add_actor("Name: Seed", 0);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    AttrMap attrs{{"tweet_id", "t" + std::to_string(i)},
                  {"user", "Seed"},
                  {"tweet", texts[i]}};
    g.add_item(attrs, 0, 0);
  }
  return g;
}

}  // namespace

TEST_CASE("hashing encoder basics") {
  HashingEncoder enc(64);

  SUBCASE("rows are unit length") {
    for (const char* t : {"a", "graph agents", "one two three four"}) {
      std::vector<float> v = enc.encode(t);
      CHECK(std::abs(dot(v, v) - 1.0) < 1e-6);
    }
  }

  SUBCASE("token order does not matter") {
    CHECK(enc.encode("alpha beta") == enc.encode("beta  ALPHA"));
  }

  SUBCASE("empty text maps to the fixed basis vector") {
    std::vector<float> v = enc.encode("");
    CHECK(v[0] == 1.0f);
    CHECK(dot(v, v) == 1.0);
  }

  SUBCASE("self-similarity is exactly one") {
    std::vector<float> v = enc.encode("graph agents model");
    CHECK(unit_cosine(v.data(), v.data(), 64) == doctest::Approx(1.0));
  }
}

TEST_CASE("recall equals exhaustive scoring on random corpora") {
  Rng rng = derive_rng(21, 0);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng.below(40);
    std::vector<std::string> texts = random_texts(n, rng);
    BipartiteGraph g = tweet_graph(texts);
    ItemSnapshot snap = g.snapshot(1);
    HashingEncoder enc(32);
    VectorIndex idx = index_items(snap, scenario_by_id("SoC"), enc);

    std::string query = random_texts(1, rng)[0];
    std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(8));
    std::vector<ScoredItem> got = recall(idx, enc, query, k);
    std::vector<std::uint32_t> want = oracle_topk(idx, query, k, 32);

    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].item == want[i]);
  }
}

TEST_CASE("recall edge cases") {
  Rng rng = derive_rng(3, 3);
  std::vector<std::string> texts = random_texts(5, rng);
  BipartiteGraph g = tweet_graph(texts);
  ItemSnapshot snap = g.snapshot(1);
  HashingEncoder enc(32);
  VectorIndex idx = index_items(snap, scenario_by_id("SoC"), enc);

  CHECK(recall(idx, enc, "anything", 0).empty());
  CHECK(recall(idx, enc, "anything", 100).size() == 5);

  // n_r = size returns every item exactly once.
  std::vector<ScoredItem> all = recall(idx, enc, "graph", 5);
  std::set<std::uint32_t> distinct;
  for (const ScoredItem& s : all) distinct.insert(s.item);
  CHECK(distinct.size() == 5);
}

TEST_CASE("coarse rerank is a stable core-first partition") {
  std::vector<ScoredItem> results = {
      {0, 10, 0.9}, {1, 11, 0.8}, {2, 12, 0.7}, {3, 13, 0.6}, {4, 14, 0.5}};
  std::vector<char> core = {0, 1, 0, 1, 0};

  std::size_t boundary = rerank_coarse(results, core);
  CHECK(boundary == 2);
  // Core block then regular block, original order inside each.
  CHECK(results[0].item == 11);
  CHECK(results[1].item == 13);
  CHECK(results[2].item == 10);
  CHECK(results[3].item == 12);
  CHECK(results[4].item == 14);

  SUBCASE("no core creators, identity") {
    std::vector<ScoredItem> r2 = {{0, 10, 0.9}, {1, 11, 0.8}};
    std::vector<char> none = {0, 0};
    CHECK(rerank_coarse(r2, none) == 0);
    CHECK(r2[0].item == 10);
    CHECK(r2[1].item == 11);
  }
}

TEST_CASE("fine rerank orders by satisfied filters, stable within score") {
  // SoC filters: follow, topic, friend. Build four items where the filter
  // outcomes are fully controlled.
  const ScenarioSpec& spec = scenario_by_id("SoC");
  BipartiteGraph g = make_graph(spec);
  g.add_actor("Name: Me\nTopics: ai", 0);      // 0: the querying actor
  g.add_actor("Name: Followed", 0);            // 1: followed by 0
  g.add_actor("Name: Friend", 0);              // 2: mutual with 0
  g.add_actor("Name: Stranger", 0);            // 3

  auto tweet = [&g](std::uint32_t creator, const std::string& id,
                    const std::string& topics) {
    AttrMap attrs{{"tweet_id", id}, {"user", "U"}, {"tweet", "text " + id}};
    if (!topics.empty()) attrs.set("topics", topics);
    return g.add_item(attrs, creator, 0);
  };
  std::uint32_t i_none = tweet(3, "t0", "sports");
  std::uint32_t i_topic = tweet(3, "t1", "ai; music");
  std::uint32_t i_follow = tweet(1, "t2", "sports");
  std::uint32_t i_all = tweet(2, "t3", "ai");

  ItemSnapshot snap = g.snapshot(1);
  std::vector<std::string> topics = {"ai"};
  std::vector<std::uint32_t> followed = {1, 2};
  std::vector<std::uint32_t> friends = {2};
  FineContext ctx{&spec, &snap, &topics, &followed, &friends};

  auto scored = [&](std::uint32_t item) {
    return ScoredItem{item, item, 0.5};  // pos == item in this graph
  };
  std::vector<ScoredItem> results = {scored(i_none), scored(i_topic),
                                     scored(i_follow), scored(i_all)};

  SUBCASE("all three filters") {
    std::vector<ScoredItem> r = results;
    rerank_fine(r, ctx, 3);
    // t3 satisfies follow+topic+friend (3), t1 topic (1), t2 follow (1),
    // t0 none. Ties keep incoming order: t1 before t2.
    CHECK(r[0].item == i_all);
    CHECK(r[1].item == i_topic);
    CHECK(r[2].item == i_follow);
    CHECK(r[3].item == i_none);
  }

  SUBCASE("n_f=1 applies only the first filter") {
    std::vector<ScoredItem> r = results;
    rerank_fine(r, ctx, 1);  // follow only
    CHECK(r[0].item == i_follow);
    CHECK(r[1].item == i_all);
    // remaining keep order
    CHECK(r[2].item == i_none);
    CHECK(r[3].item == i_topic);
  }

  SUBCASE("n_f=0 is the identity") {
    std::vector<ScoredItem> r = results;
    rerank_fine(r, ctx, 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      CHECK(r[i].item == results[i].item);
  }

  SUBCASE("block boundaries are respected") {
    std::vector<ScoredItem> r = results;
    // Only rerank the tail block; head stays put even though t3 scores high.
    rerank_fine(r, 2, r.size(), ctx, 3);
    CHECK(r[0].item == i_none);
    CHECK(r[1].item == i_topic);
    CHECK(r[2].item == i_all);
    CHECK(r[3].item == i_follow);
  }
}

TEST_CASE("topic match accepts part matches and substrings") {
  const ScenarioSpec& spec = scenario_by_id("TC");
  BipartiteGraph g = make_graph(spec);
  g.add_actor("Name: A", 0);
  AttrMap attrs{{"title", "M"},
                {"genres", "Science Fiction; Thriller"},
                {"content", "A mind-bending chase."}};
  g.add_item(attrs, 0, 0);
  ItemSnapshot snap = g.snapshot(1);

  auto match = [&](const std::vector<std::string>& topics) {
    FineContext ctx{&spec, &snap, &topics, nullptr, nullptr};
    return fine_score(ctx, 0, 1) == 1;
  };
  CHECK(match({"thriller"}));          // normalized part match
  CHECK(match({"science fiction"}));   // full part
  CHECK(match({"fiction"}));           // substring
  CHECK(!match({"comedy"}));
  CHECK(!match({}));
}

TEST_CASE("observation dedups by first appearance across queries") {
  std::vector<std::vector<ScoredItem>> per_query = {
      {{0, 5, 0.9}, {1, 3, 0.8}},
      {{2, 3, 0.95}, {3, 8, 0.4}, {0, 5, 0.2}},
  };
  Observation obs = assemble_observation(per_query);
  CHECK(obs.unified == std::vector<std::uint32_t>{5, 3, 8});
  CHECK(obs.unified_pos == std::vector<std::uint32_t>{0, 1, 3});
  CHECK(obs.per_query.size() == 2);
  CHECK(obs.per_query[1].size() == 3);  // per-query lists stay verbatim
}

TEST_CASE("snapshot isolation: index never sees same-round items") {
  const ScenarioSpec& spec = scenario_by_id("SoC");
  BipartiteGraph g = make_graph(spec);
  g.add_actor("Name: A", 0);
  AttrMap a0{{"tweet_id", "t0"}, {"user", "A"}, {"tweet", "round zero"}};
  g.add_item(a0, 0, 0);
  AttrMap a1{{"tweet_id", "t1"}, {"user", "A"}, {"tweet", "round one"}};
  g.add_item(a1, 0, 1);

  ItemSnapshot snap = g.snapshot(1);  // sees rounds < 1
  CHECK(snap.size() == 1);
  HashingEncoder enc(32);
  VectorIndex idx = index_items(snap, spec, enc);
  CHECK(idx.size() == 1);
  CHECK(idx.items[0] == 0);

  // The full current state only appears one round later.
  CHECK(g.snapshot(2).size() == 2);
}

TEST_CASE("followed and mutual creator sets") {
  const ScenarioSpec& spec = scenario_by_id("SoC");
  BipartiteGraph g = make_graph(spec);
  std::uint32_t me = g.add_actor("Name: Me", 0);
  std::uint32_t b = g.add_actor("Name: B", 0);
  std::uint32_t c = g.add_actor("Name: C", 0);

  auto post = [&](std::uint32_t who, const char* id) {
    AttrMap attrs{{"tweet_id", id}, {"user", "x"}, {"tweet", "hi"}};
    std::uint32_t item = g.add_item(attrs, who, 0);
    g.add_edge(who, item, ActionKind::Tweet, 0);
    return item;
  };
  std::uint32_t post_me = post(me, "pm");
  std::uint32_t post_b = post(b, "pb");
  std::uint32_t post_c = post(c, "pc");

  // me follows b and c; only b follows me back.
  g.add_edge(me, post_b, ActionKind::Follow, 1);
  g.add_edge(me, post_c, ActionKind::Follow, 1);
  g.add_edge(b, post_me, ActionKind::Follow, 1);

  std::vector<std::uint32_t> f = followed_creators(g, me, *spec.creation_kind);
  CHECK(f == std::vector<std::uint32_t>{b, c});
  std::vector<std::uint32_t> m = mutual_follows(g, me, f, *spec.creation_kind);
  CHECK(m == std::vector<std::uint32_t>{b});
}
