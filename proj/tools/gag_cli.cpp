// gag — grow, fold, and evaluate text-attributed interaction graphs.
//
// Exit codes: 0 success, 2 usage/config/input error, 3 backend error,
// 1 anything else.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gag/cli/commands.hpp"

namespace {

using KvList = std::vector<std::pair<std::string, std::string>>;

struct RunArgs {
  std::string config;
  std::vector<std::string> sets;  // raw key=value pairs
  KvList flags;                   // typed flags, applied after --set
};

void add_set_flag(CLI::App& cmd, RunArgs& args) {
  cmd.add_option("--config", args.config, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd.add_option("--set", args.sets,
                 "override any config key, e.g. --set srag.n_r=10");
}

// Typed convenience flags; each lands in the same key=value pipeline the
// config file uses, after --set so the specific flag wins.
void add_run_flags(CLI::App& cmd, RunArgs& args, bool with_ports = true) {
  add_set_flag(cmd, args);
  auto kv = [&args](const std::string& key) {
    return [&args, key](const std::string& v) { args.flags.emplace_back(key, v); };
  };
  cmd.add_option_function<std::string>("--scenario", kv("scenario"),
                                       "scenario id (SC, TC, SoC)");
  cmd.add_option_function<std::string>("--rounds", kv("rounds"),
                                       "rounds to simulate");
  cmd.add_option_function<std::string>("--seed", kv("rng_seed"),
                                       "root RNG seed");
  if (with_ports)
    cmd.add_option_function<std::string>("--ports", kv("ports"),
                                         "parallel interaction workers");
  cmd.add_option_function<std::string>(
      "--backend", kv("backend"), "chat backend: mock, remote, replay");
  cmd.add_option_function<std::string>("--policy", kv("policy.kind"),
                                       "agent policy: heuristic or llm");
  cmd.add_option_function<std::string>("--model", kv("model"),
                                       "remote chat model name");
  cmd.add_option_function<std::string>("--out-dir", kv("out_dir"),
                                       "output directory");
  cmd.add_option_function<std::string>("--n-r", kv("n_r"),
                                       "recall depth per query");
  cmd.add_option_function<std::string>("--n-f", kv("n_f"),
                                       "rank filters applied in rerank");
  cmd.add_option_function<std::string>("--hub-rate", kv("hub_rate"),
                                       "fraction of actors labeled core");
  cmd.add_option_function<std::string>("--rerank", kv("rerank"),
                                       "enable rerank stage (true/false)");
  cmd.add_option_function<std::string>(
      "--injected-latency-ms", kv("injected_latency_ms"),
      "artificial per-interaction latency");
  cmd.add_option_function<std::string>("--replay", kv("backend.replay_path"),
                                       "exchange log for the replay backend");
}

KvList overrides_of(const RunArgs& args) {
  KvList kv;
  for (const std::string& s : args.sets) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw gag::ConfigError("--set expects key=value, got '" + s + "'");
    kv.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& f : args.flags) kv.push_back(f);
  return kv;
}

std::optional<std::filesystem::path> config_of(const RunArgs& args) {
  if (args.config.empty()) return std::nullopt;
  return std::filesystem::path(args.config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grow, fold, and evaluate text-attributed interaction graphs"};
  app.require_subcommand(1);

  RunArgs sim_args;
  std::vector<std::string> sim_folds;
  CLI::App* sim = app.add_subcommand("simulate", "grow a graph and save it");
  add_run_flags(*sim, sim_args);
  sim->add_option("--folds", sim_folds,
                  "also write these folds (names or 'all')");

  std::string in_dir, scenario, out_dir;
  std::vector<std::string> fold_names;
  CLI::App* fld = app.add_subcommand("fold", "project a saved run");
  fld->add_option("--in", in_dir, "run directory")->required();
  fld->add_option("--scenario", scenario, "scenario id")->required();
  fld->add_option("--folds", fold_names, "fold names or 'all'");
  fld->add_option("--out", out_dir, "output directory (default <in>/folds)");

  std::string ev_in, ev_scenario, ev_out;
  std::vector<std::string> ev_folds;
  CLI::App* ev = app.add_subcommand("evaluate",
                                    "structure metrics and plot data");
  ev->add_option("--in", ev_in, "run directory")->required();
  ev->add_option("--scenario", ev_scenario, "scenario id")->required();
  ev->add_option("--folds", ev_folds, "fold names or 'all'");
  ev->add_option("--out", ev_out, "output directory (default <in>)");

  std::string cp_in, cp_scenario, cp_out;
  std::vector<std::string> cp_folds;
  std::uint64_t cp_seed = 7;
  std::uint32_t cp_samples = 5, cp_mmd_cap = 400;
  CLI::App* cp = app.add_subcommand("compare",
                                    "folds vs random-graph references");
  cp->add_option("--in", cp_in, "run directory")->required();
  cp->add_option("--scenario", cp_scenario, "scenario id")->required();
  cp->add_option("--folds", cp_folds, "fold names or 'all'");
  cp->add_option("--out", cp_out, "output directory (default <in>)");
  cp->add_option("--seed", cp_seed, "reference-graph seed");
  cp->add_option("--samples", cp_samples, "reference graphs per model");
  cp->add_option("--mmd-cap", cp_mmd_cap,
                 "skip distribution discrepancies above this node count");

  RunArgs ab_args;
  std::string ab_out;
  CLI::App* ab = app.add_subcommand("ablate", "recipe grid over one config");
  add_run_flags(*ab, ab_args);
  ab->add_option("--out", ab_out, "output directory");

  RunArgs sp_args;
  std::vector<std::uint32_t> sp_ports;
  std::string sp_out;
  CLI::App* sp = app.add_subcommand("speedup",
                                    "wall time per interaction vs workers");
  add_run_flags(*sp, sp_args, /*with_ports=*/false);
  sp->add_option("--ports", sp_ports, "worker counts to measure")->required();
  sp->add_option("--out", sp_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sim)
      gag::cli::cmd_simulate(config_of(sim_args), overrides_of(sim_args),
                             sim_folds);
    else if (*fld)
      gag::cli::cmd_fold(in_dir, scenario, fold_names, out_dir);
    else if (*ev)
      gag::cli::cmd_evaluate(ev_in, ev_scenario, ev_folds, ev_out);
    else if (*cp)
      gag::cli::cmd_compare(cp_in, cp_scenario, cp_folds, cp_out, cp_seed,
                            cp_samples, cp_mmd_cap);
    else if (*ab)
      gag::cli::cmd_ablate(config_of(ab_args), overrides_of(ab_args), ab_out);
    else if (*sp)
      gag::cli::cmd_speedup(config_of(sp_args), overrides_of(sp_args),
                            sp_ports, sp_out);
  } catch (const gag::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gag::UnknownScenario& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gag::SpecScenarioMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gag::BadSeedSpec& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gag::InvalidParams& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gag::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gag::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gag::BackendError& e) {
    std::fprintf(stderr, "backend error: %s\n", e.what());
    return 3;
  } catch (const gag::RetriesExhausted& e) {
    std::fprintf(stderr, "backend error: %s\n", e.what());
    return 3;
  } catch (const gag::Timeout& e) {
    std::fprintf(stderr, "backend error: %s\n", e.what());
    return 3;
  } catch (const gag::HttpStatus& e) {
    std::fprintf(stderr, "backend error: %s\n", e.what());
    return 3;
  } catch (const gag::MissingApiKey& e) {
    std::fprintf(stderr, "backend error: %s\n", e.what());
    return 3;
  } catch (const gag::EncoderError& e) {
    std::fprintf(stderr, "backend error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
