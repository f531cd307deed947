#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gag/core/io.hpp"
#include "gag/scenario/scenario.hpp"

using namespace gag;

#ifndef GAG_CLI_PATH
#define GAG_CLI_PATH "gag"
#endif

namespace {

std::filesystem::path temp_dir(const char* tag) {
  auto p = std::filesystem::temp_directory_path() /
           (std::string("gag_cli_") + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(GAG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kSmallRun =
    "--scenario SoC --rounds 3 --seed 19 --set seed.actors=15 "
    "--set seed.items=25 --set seed.edges=40 "
    "--set activation.mode=random_sample --set activation.count=6 "
    "--set profiles_per_round=2";

}  // namespace

TEST_CASE("simulate writes a loadable run directory") {
  auto out = temp_dir("simulate");
  REQUIRE(run_cli("simulate " + kSmallRun + " --out-dir " + out.string() +
                  " --folds all") == 0);

  CHECK(std::filesystem::exists(out / "nodes.jsonl"));
  CHECK(std::filesystem::exists(out / "edges.tsv"));
  CHECK(std::filesystem::exists(out / "manifest.json"));
  CHECK(std::filesystem::exists(out / "profiles.jsonl"));
  for (const char* f : {"Action", "Follow", "Friend"})
    CHECK(std::filesystem::exists(out / "folds" / (std::string(f) + ".tsv")));

  BipartiteGraph g = load_graph(out, make_graph(scenario_by_id("SoC")));
  CHECK(g.actors().size() >= 15);
  CHECK(g.items().size() >= 25);

  nlohmann::json manifest;
  std::ifstream(out / "manifest.json") >> manifest;
  CHECK(manifest["rounds"].size() == 3);
  CHECK(manifest["config"]["rng_seed"] == 19);
  std::filesystem::remove_all(out);
}

TEST_CASE("identical seeds give identical run artifacts") {
  auto a = temp_dir("det_a");
  auto b = temp_dir("det_b");
  REQUIRE(run_cli("simulate " + kSmallRun + " --ports 1 --out-dir " +
                  a.string()) == 0);
  REQUIRE(run_cli("simulate " + kSmallRun + " --ports 8 --out-dir " +
                  b.string()) == 0);
  CHECK(slurp(a / "nodes.jsonl") == slurp(b / "nodes.jsonl"));
  CHECK(slurp(a / "edges.tsv") == slurp(b / "edges.tsv"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("fold and evaluate run against a saved graph") {
  auto run = temp_dir("pipeline");
  REQUIRE(run_cli("simulate " + kSmallRun + " --out-dir " + run.string()) ==
          0);

  SUBCASE("fold writes edge lists with headers") {
    auto folds = temp_dir("pipeline_folds");
    REQUIRE(run_cli("fold --in " + run.string() + " --scenario SoC --out " +
                    folds.string()) == 0);
    std::string action = slurp(folds / "Action.tsv");
    CHECK(action.rfind("# fold=Action", 0) == 0);
    std::filesystem::remove_all(folds);
  }

  SUBCASE("evaluate emits metrics.json and plot csvs, byte-stable") {
    auto e1 = temp_dir("pipeline_e1");
    auto e2 = temp_dir("pipeline_e2");
    REQUIRE(run_cli("evaluate --in " + run.string() + " --scenario SoC --out " +
                    e1.string()) == 0);
    REQUIRE(run_cli("evaluate --in " + run.string() + " --scenario SoC --out " +
                    e2.string()) == 0);
    CHECK(std::filesystem::exists(e1 / "metrics.json"));
    CHECK(std::filesystem::exists(e1 / "plots" / "Action_degree_pdf_loglog.csv"));
    CHECK(std::filesystem::exists(e1 / "plots" /
                                  "Action_diameter_over_rounds.csv"));
    CHECK(std::filesystem::exists(e1 / "plots" /
                                  "Action_neighbor_degree_scatter.csv"));
    CHECK(slurp(e1 / "metrics.json") == slurp(e2 / "metrics.json"));
    CHECK(slurp(e1 / "plots" / "Action_degree_pdf_loglog.csv") ==
          slurp(e2 / "plots" / "Action_degree_pdf_loglog.csv"));

    nlohmann::json metrics;
    std::ifstream(e1 / "metrics.json") >> metrics;
    CHECK(metrics["scenario"] == "SoC");
    CHECK(metrics["folds"].contains("Action"));
    CHECK(metrics["folds"]["Action"]["summary"]["nodes"].get<int>() > 0);
    std::filesystem::remove_all(e1);
    std::filesystem::remove_all(e2);
  }

  SUBCASE("compare writes one row per fold and model") {
    auto c = temp_dir("pipeline_cmp");
    REQUIRE(run_cli("compare --in " + run.string() + " --scenario SoC --out " +
                    c.string() + " --seed 3") == 0);
    std::string csv = slurp(c / "compare.csv");
    CHECK(csv.find("Action,ER,") != std::string::npos);
    CHECK(csv.find("Action,BA,") != std::string::npos);
    CHECK(csv.find("Action,WS,") != std::string::npos);
    std::filesystem::remove_all(c);
  }

  std::filesystem::remove_all(run);
}

TEST_CASE("cli failure modes use distinct exit codes") {
  CHECK(run_cli("simulate --scenario Nope") == 2);
  CHECK(run_cli("simulate --config /definitely/not/here.json") == 2);
  CHECK(run_cli("simulate --no-such-flag") == 2);
  CHECK(run_cli("simulate --set rounds") == 2);         // not key=value
  CHECK(run_cli("simulate --scenario SoC --rounds 0") == 2);
  CHECK(run_cli("fold --in /definitely/not/here --scenario SC") == 2);
  CHECK(run_cli("") == 2);  // subcommand required
  CHECK(run_cli("--help") == 0);

  // Remote backend without an API key is a backend error, not a config one.
  unsetenv("GAG_API_KEY");
  CHECK(run_cli("simulate --scenario SoC --rounds 1 --policy llm "
                "--backend remote") == 3);
}

TEST_CASE("speedup prints a table and csv") {
  auto out = temp_dir("speedup");
  REQUIRE(run_cli("speedup --scenario SoC --rounds 1 --seed 2 "
                  "--set seed.actors=6 --set seed.items=12 "
                  "--set seed.edges=12 --set activation.mode=all "
                  "--set injected_latency_ms=5 --ports 1 2 --out " +
                  out.string()) == 0);
  std::string csv = slurp(out / "speedup.csv");
  CHECK(csv.rfind("ports,", 0) == 0);
  CHECK(csv.find("\n1,") != std::string::npos);
  CHECK(csv.find("\n2,") != std::string::npos);
  std::filesystem::remove_all(out);
}
