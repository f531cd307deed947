#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gag/core/fold.hpp"
#include "gag/core/graph.hpp"
#include "gag/core/io.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/util/rng.hpp"

using namespace gag;

namespace {

std::filesystem::path temp_dir(const char* tag) {
  auto p = std::filesystem::temp_directory_path() /
           (std::string("gag_test_") + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("graph stores nodes and typed edges with dense ordinals") {
  BipartiteGraph g = make_graph(scenario_by_id("SC"));
  CHECK(g.add_actor("Name: A", 0) == 0);
  CHECK(g.add_actor("Name: B", 0) == 1);
  AttrMap attrs{{"title", "T"}, {"topic", "AI"}, {"abstract", "X"}};
  CHECK(g.add_item(attrs, 0, 0) == 0);
  CHECK(g.add_edge(0, 0, ActionKind::Creation, 0) == 0);
  CHECK(g.add_edge(1, 0, ActionKind::Citation, 1) == 1);

  CHECK(g.actors().size() == 2);
  CHECK(g.items().size() == 1);
  CHECK(g.edges().size() == 2);
  CHECK(g.edges_of_actor(1) == std::vector<std::uint32_t>{1});
  CHECK(g.edges_of_item(0).size() == 2);
  CHECK(g.edges_of_kind(ActionKind::Citation) ==
        std::vector<std::uint32_t>{1});
}

TEST_CASE("edge and item validation") {
  BipartiteGraph g = make_graph(scenario_by_id("SC"));
  g.add_actor("Name: A", 0);

  SUBCASE("empty required attr is rejected") {
    AttrMap attrs{{"title", "T"}, {"topic", "AI"}, {"abstract", ""}};
    CHECK_THROWS_AS(g.add_item(attrs, std::nullopt, 0), MissingRequiredAttr);
  }
  SUBCASE("missing required attr is rejected") {
    AttrMap attrs{{"title", "T"}, {"topic", "AI"}};
    CHECK_THROWS_AS(g.add_item(attrs, std::nullopt, 0), MissingRequiredAttr);
  }
  SUBCASE("edge kinds outside the scenario are rejected") {
    AttrMap attrs{{"title", "T"}, {"topic", "AI"}, {"abstract", "X"}};
    g.add_item(attrs, 0, 0);
    CHECK_THROWS_AS(g.add_edge(0, 0, ActionKind::Rating, 0),
                    UnknownActionKind);
  }
  SUBCASE("dangling endpoints are rejected") {
    AttrMap attrs{{"title", "T"}, {"topic", "AI"}, {"abstract", "X"}};
    g.add_item(attrs, 0, 0);
    CHECK_THROWS_AS(g.add_edge(7, 0, ActionKind::Creation, 0),
                    DanglingEndpoint);
    CHECK_THROWS_AS(g.add_edge(0, 7, ActionKind::Creation, 0),
                    DanglingEndpoint);
    CHECK_THROWS_AS(g.add_item(attrs, 9, 0), DanglingEndpoint);
  }
}

TEST_CASE("snapshot covers exactly the items of earlier rounds") {
  BipartiteGraph g;  // permissive
  g.add_actor("a", 0);
  AttrMap attrs{{"title", "t"}};
  const std::uint32_t seed_items = 7;
  for (std::uint32_t i = 0; i < seed_items; ++i) g.add_item(attrs, 0, 0);
  for (std::uint32_t r = 1; r <= 2; ++r)
    for (int i = 0; i < 50; ++i) g.add_item(attrs, 0, r);

  CHECK(g.snapshot(1).size() == seed_items);
  CHECK(g.snapshot(2).size() == seed_items + 50);
  CHECK(g.snapshot(3).size() == seed_items + 100);

  // A snapshot taken before a mutation is unaffected by it.
  ItemSnapshot snap = g.snapshot(3);
  g.add_item(attrs, 0, 3);
  CHECK(snap.size() == seed_items + 100);
  CHECK(g.snapshot(4).size() == seed_items + 101);
}

TEST_CASE("rounds must be non-decreasing so snapshots stay prefixes") {
  BipartiteGraph g;
  g.add_actor("a", 0);
  AttrMap attrs{{"title", "t"}};
  g.add_item(attrs, 0, 2);
  CHECK_THROWS_AS(g.add_item(attrs, 0, 1), Error);
}

TEST_CASE("graph persistence round-trips every field byte-identically") {
  BipartiteGraph g = make_graph(scenario_by_id("SoC"));
  g.add_actor("Name: Ada; Description: graphs", 0, true);
  g.add_actor("Name: Bob; Description: cats", 0);
  AttrMap t1{{"tweet_id", "t0"}, {"user", "Ada"}, {"tweet", "hello graphs"}};
  AttrMap t2{{"tweet_id", "t1"}, {"user", "Bob"}, {"tweet", "cats are fine"}};
  g.add_item(t1, 0, 0);
  g.add_item(t2, 1, 1);
  g.add_edge(0, 0, ActionKind::Tweet, 0);
  g.add_edge(1, 1, ActionKind::Tweet, 1);
  g.add_edge(1, 0, ActionKind::Reply, 1);
  g.add_edge(0, 1, ActionKind::Follow, 2);

  auto dir = temp_dir("io");
  save_graph(g, dir);
  BipartiteGraph h = load_graph(dir, make_graph(scenario_by_id("SoC")));

  REQUIRE(h.actors().size() == g.actors().size());
  REQUIRE(h.items().size() == g.items().size());
  REQUIRE(h.edges().size() == g.edges().size());
  CHECK(h.actors()[0].profile_text == g.actors()[0].profile_text);
  CHECK(h.actors()[0].core == true);
  CHECK(h.actors()[1].core == false);
  CHECK(h.items()[1].attrs == g.items()[1].attrs);
  CHECK(h.items()[1].creator == g.items()[1].creator);
  CHECK(h.items()[1].created_round == 1);
  CHECK(h.edges()[3].kind == ActionKind::Follow);
  CHECK(h.edges()[3].round == 2);

  auto dir2 = temp_dir("io2");
  save_graph(h, dir2);
  CHECK(read_text_file(dir / "nodes.jsonl") ==
        read_text_file(dir2 / "nodes.jsonl"));
  CHECK(read_text_file(dir / "edges.tsv") ==
        read_text_file(dir2 / "edges.tsv"));
}

TEST_CASE("malformed persisted input reports the offending line") {
  auto dir = temp_dir("bad_io");
  {
    std::ofstream nodes(dir / "nodes.jsonl");
    nodes << R"({"id":0,"kind":"actor","attrs":{"profile":"p"},"creator":null,"round":0,"core":false})"
          << "\n";
    nodes << "this is not json\n";
  }
  {
    std::ofstream edges(dir / "edges.tsv");
    edges << "0\t0\tCreation\n";  // one column short
  }
  CHECK_THROWS_WITH_AS(load_graph(dir), doctest::Contains("nodes.jsonl:2"),
                       ParseError);
  {
    std::ofstream nodes(dir / "nodes.jsonl", std::ios::trunc);
    nodes << R"({"id":0,"kind":"actor","attrs":{"profile":"p"},"creator":null,"round":0,"core":false})"
          << "\n";
  }
  CHECK_THROWS_WITH_AS(load_graph(dir), doctest::Contains("edges.tsv:1"),
                       ParseError);
}

TEST_CASE("item text renders the scenario template in attr order") {
  const ScenarioSpec& sc = scenario_by_id("SC");
  ItemNode item;
  item.attrs = AttrMap{{"title", "T"}, {"topic", "AI"}, {"abstract", "X"}};
  std::string text = render_item_text(item, sc);
  CHECK(text.find("Title: T") != std::string::npos);
  CHECK(text.find("Topic: AI") != std::string::npos);
  CHECK(text.find("Abstract: X") != std::string::npos);
  CHECK(text.find("Node Feature: Academic paper.") == 0);

  // 1-hop authorship is appended only when the scenario asks for it.
  std::string with_authors = render_item_text(item, sc, {"Ada", "Bob"});
  CHECK(with_authors.find("Authors: Ada; Bob") != std::string::npos);

  ItemNode empty_abstract;
  empty_abstract.attrs = AttrMap{{"title", "T"}, {"topic", "AI"}, {"abstract", ""}};
  CHECK_THROWS_AS(render_item_text(empty_abstract, sc), MissingRequiredAttr);
}

TEST_CASE("scenario table matches the domain definitions") {
  const ScenarioSpec& sc = scenario_by_id("SC");
  CHECK(sc.creation_kind == ActionKind::Creation);
  CHECK(sc.termination.kind == Termination::Kind::NodesReached);
  CHECK(sc.termination.fold == FoldName::PaperCitation);
  CHECK(sc.termination.count == 10000);
  CHECK(sc.profiles_per_round == 30);

  const ScenarioSpec& tc = scenario_by_id("TC");
  CHECK_FALSE(tc.creation_kind.has_value());
  CHECK(tc.termination.kind == Termination::Kind::EdgesReached);
  CHECK(tc.termination.count == 100000);
  CHECK(tc.activation.mode == ActivationDefaults::Mode::All);

  const ScenarioSpec& soc = scenario_by_id("SoC");
  CHECK(soc.creation_kind == ActionKind::Tweet);
  CHECK(soc.termination.kind == Termination::Kind::Rounds);
  CHECK(soc.termination.count == 5);
  CHECK(soc.filter_items ==
        std::vector<std::string>{"follow", "topic", "friend"});
  CHECK(soc.profiles_per_round == 25);

  CHECK_THROWS_AS(scenario_by_id("XX"), UnknownScenario);

  // A corrupted spec must not validate.
  ScenarioSpec bad = sc;
  bad.creation_kind = ActionKind::Rating;
  CHECK_THROWS_AS(bad.validate(), SpecScenarioMismatch);
}

TEST_CASE("termination rules fire on the folded thresholds") {
  ScenarioSpec spec = scenario_by_id("SoC");
  BipartiteGraph g = make_graph(spec);
  CHECK_FALSE(check_termination(g, spec, 4).has_value());
  CHECK(check_termination(g, spec, 5).has_value());

  ScenarioSpec reach = spec;
  reach.termination = {Termination::Kind::EdgesReached, FoldName::Follow, 1};
  g.add_actor("Name: A", 0);
  g.add_actor("Name: B", 0);
  AttrMap t{{"tweet_id", "t0"}, {"user", "B"}, {"tweet", "hi"}};
  g.add_item(t, 1, 0);
  CHECK_FALSE(check_termination(g, reach, 1).has_value());
  g.add_edge(0, 0, ActionKind::Follow, 1);
  CHECK(check_termination(g, reach, 1).has_value());
}
