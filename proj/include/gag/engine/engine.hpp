#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "gag/agent/policy.hpp"
#include "gag/agent/profile.hpp"
#include "gag/agent/vocab.hpp"
#include "gag/core/graph.hpp"
#include "gag/core/io.hpp"
#include "gag/engine/config.hpp"
#include "gag/engine/seed.hpp"
#include "gag/llm/backend.hpp"
#include "gag/llm/llm_policy.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/srag/embed.hpp"
#include "gag/srag/round.hpp"

namespace gag {

inline constexpr std::string_view kEngineVersion = "0.1.0";

// Per-round accounting. new_edges_by_kind includes the implied creation
// edges, so summing reports over rounds reproduces |E_K| - |E_0| exactly.
struct RoundReport {
  std::uint32_t round = 0;
  std::uint32_t active = 0;
  std::uint32_t failed = 0;
  std::uint32_t new_actors = 0;
  std::uint32_t new_items = 0;
  std::array<std::uint64_t, kActionKindCount> new_edges_by_kind{};
  std::uint64_t queries = 0;
  double formulate_ms = 0, index_ms = 0, interact_ms = 0, merge_ms = 0;
  double total_ms = 0;

  std::uint64_t new_edges_total() const {
    std::uint64_t total = 0;
    for (std::uint64_t n : new_edges_by_kind) total += n;
    return total;
  }
};

struct RunManifest {
  std::string version{kEngineVersion};
  SimConfig config;
  std::vector<RoundReport> rounds;
  std::string termination;
  std::uint64_t interactions = 0;      // activations dispatched
  std::uint32_t dropped_targets = 0;   // llm replies naming unknown items
};

struct RunResult {
  BipartiteGraph graph;
  std::vector<AgentProfile> profiles;
  std::vector<AgentMemory> memories;
  RunManifest manifest;
  std::vector<ChatExchange> exchanges;  // llm mode only
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// The item text recorded into an actor's memory: its topical attribute,
// falling back to the primary attribute so records are never blank.
inline std::string memory_text(const ItemNode& item,
                               const ScenarioSpec& spec) {
  std::string text = item.attrs.get_or(spec.topic_attr, "");
  if (text.empty() && !spec.required_item_attrs.empty())
    text = item.attrs.get_or(spec.required_item_attrs.front(), "");
  return text;
}

}  // namespace detail

// Grows the graph round by round: formulate new actors, pick the active
// set, freeze a snapshot, run every interaction on a pool of exactly
// `ports` workers, then merge deltas in actor order on this thread — the
// only one that ever mutates the graph. Bit-identical output for any
// `ports` value because each actor draws from its own derived rng stream
// and merge order is positional.
inline RunResult run_simulation(const SimConfig& cfg,
                                const ScenarioSpec& spec) {
  cfg.validate(spec);
  const Vocabulary vocab =
      cfg.vocab_dir.empty() ? default_vocab() : load_vocab_dir(cfg.vocab_dir);

  const bool llm_mode = cfg.policy_kind == PolicyKind::Llm;
  std::unique_ptr<Backend> backend;
  if (llm_mode || cfg.seed.source == "llm-generated") {
    BackendConfig bc = cfg.backend;
    if (bc.kind == BackendConfig::Kind::Mock && bc.seed == 0)
      bc.seed = cfg.rng_seed;
    backend = make_backend(bc, cfg.srag.embed_dim);
  }

  std::unique_ptr<Encoder> encoder;
  if (llm_mode)
    encoder = std::make_unique<BackendEncoder>(*backend);
  else
    encoder = std::make_unique<HashingEncoder>(cfg.srag.embed_dim);

  std::unique_ptr<AgentPolicy> policy;
  LlmPolicy* llm_policy = nullptr;
  if (llm_mode) {
    auto p = std::make_unique<LlmPolicy>(*backend, cfg.llm);
    llm_policy = p.get();
    policy = std::move(p);
  } else {
    policy = std::make_unique<HeuristicPolicy>(cfg.heuristic);
  }

  RunResult res;
  SeedResult seeded =
      load_seed(spec, cfg.seed, vocab, cfg.rng_seed, backend.get());
  res.graph = std::move(seeded.graph);
  res.profiles = std::move(seeded.profiles);
  res.memories.resize(res.profiles.size());
  res.manifest.config = cfg;

  const std::uint64_t base_edges = res.graph.edges().size();
  std::optional<std::string> cause;

  for (std::uint32_t k = 1; k <= cfg.rounds && !cause; ++k) {
    RoundReport report;
    report.round = k;
    auto round_t0 = std::chrono::steady_clock::now();

    // Formulate: new actors join before activation is decided.
    {
      std::vector<AgentProfile> fresh;
      if (cfg.profiles_per_round > 0) {
        if (llm_mode) {
          fresh = generate_profiles_llm(*backend, spec, cfg.profiles_per_round,
                                        k, res.profiles.size(),
                                        cfg.llm.repair_retries);
        } else {
          Rng rng = derive_rng(cfg.rng_seed, k, 0, stream::kProfiles);
          fresh = generate_profiles(vocab, spec, cfg.profiles_per_round, rng);
        }
      }
      for (AgentProfile& p : fresh) {
        res.graph.add_actor(render_profile_text(p, spec), k);
        res.profiles.push_back(std::move(p));
        res.memories.emplace_back();
      }
      report.new_actors = static_cast<std::uint32_t>(fresh.size());
    }

    // Hubs are the most active actors so far; activation favors them.
    const std::uint32_t n = static_cast<std::uint32_t>(res.profiles.size());
    std::vector<std::size_t> history(n);
    for (std::uint32_t i = 0; i < n; ++i)
      history[i] = res.memories[i].log.size();
    std::vector<char> core = label_core(history, cfg.srag.hub_rate);
    for (std::uint32_t i = 0; i < n; ++i) res.graph.set_core(i, core[i]);

    std::vector<std::uint32_t> active;
    if (llm_mode &&
        cfg.activation.mode == ActivationDefaults::Mode::CoreRegular) {
      for (std::uint32_t i = 0; i < n; ++i)
        if (activation_llm(*backend, spec,
                           render_profile_text(res.profiles[i], spec),
                           core[i], history[i], k))
          active.push_back(i);
    } else {
      Rng rng = derive_rng(cfg.rng_seed, k, 0, stream::kActivate);
      active = activate(n, core, cfg.activation, rng);
    }
    report.active = static_cast<std::uint32_t>(active.size());
    report.formulate_ms = detail::ms_since(round_t0);

    // Freeze what this round can see and embed it once.
    auto index_t0 = std::chrono::steady_clock::now();
    ItemSnapshot snap = res.graph.snapshot(k);
    VectorIndex idx = index_items(
        snap, spec, *encoder,
        [&](std::uint32_t a) { return res.profiles[a].name; });
    report.index_ms = detail::ms_since(index_t0);

    // Interact: workers claim active-list positions; results land in slots,
    // so scheduling order can never reorder the merge.
    auto interact_t0 = std::chrono::steady_clock::now();
    std::vector<ActorDelta> deltas(active.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        std::size_t slot = next.fetch_add(1);
        if (slot >= deltas.size()) break;
        std::uint32_t a = active[slot];
        if (cfg.injected_latency_ms > 0)
          std::this_thread::sleep_for(
              std::chrono::milliseconds(cfg.injected_latency_ms));
        try {
          deltas[slot] = run_actor(
              snap, idx, spec, cfg.srag, *encoder, *policy, res.profiles[a],
              res.memories[a], a, k,
              derive_rng(cfg.rng_seed, k, a, stream::kActor));
        } catch (const std::exception& e) {
          deltas[slot] = ActorDelta{};
          deltas[slot].failed = true;
          deltas[slot].error = e.what();
        }
        deltas[slot].actor = a;
      }
    };
    {
      std::vector<std::thread> pool;
      pool.reserve(cfg.ports);
      for (std::uint32_t p = 0; p < cfg.ports; ++p) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }
    report.interact_ms = detail::ms_since(interact_t0);

    // Merge in active order (ascending actor ordinal): items first get
    // their final ordinals here, then edges and memories follow.
    auto merge_t0 = std::chrono::steady_clock::now();
    for (const ActorDelta& delta : deltas) {
      if (delta.failed) {
        ++report.failed;
        continue;
      }
      report.queries += delta.queries;
      if (delta.new_item) {
        if (!spec.creation_kind)
          throw SpecScenarioMismatch(spec.id + " actors cannot create items");
        std::uint32_t item =
            res.graph.add_item(*delta.new_item, delta.actor, k);
        res.graph.add_edge(delta.actor, item, *spec.creation_kind, k);
        ++report.new_items;
        ++report.new_edges_by_kind[static_cast<std::size_t>(
            *spec.creation_kind)];
        res.memories[delta.actor].log.push_back(
            {k, *spec.creation_kind, item,
             detail::memory_text(res.graph.items()[item], spec)});
      }
      for (const auto& [item, kind] : delta.edges) {
        res.graph.add_edge(delta.actor, item, kind, k);
        ++report.new_edges_by_kind[static_cast<std::size_t>(kind)];
        res.memories[delta.actor].log.push_back(
            {k, kind, item,
             detail::memory_text(res.graph.items()[item], spec)});
      }
    }
    report.merge_ms = detail::ms_since(merge_t0);
    report.total_ms = detail::ms_since(round_t0);
    res.manifest.interactions += report.active;
    res.manifest.rounds.push_back(report);

    // cfg.rounds already carries the round-count rule (with any override),
    // so only threshold-style rules are consulted mid-run.
    if (spec.termination.kind != Termination::Kind::Rounds)
      cause = check_termination(res.graph, spec, k);
  }

  res.manifest.termination =
      cause ? *cause
            : "rounds reached " + std::to_string(cfg.rounds);
  if (llm_policy) res.manifest.dropped_targets = llm_policy->dropped_targets();
  if (backend) res.exchanges = backend->exchanges();

  // Conservation check: the reports must explain every edge we added.
  std::uint64_t reported = 0;
  for (const RoundReport& r : res.manifest.rounds)
    reported += r.new_edges_total();
  if (base_edges + reported != res.graph.edges().size())
    throw Error("round reports lost track of " +
                std::to_string(res.graph.edges().size() - base_edges -
                               reported) +
                " edges");
  return res;
}

inline RunResult run_simulation(const SimConfig& cfg) {
  return run_simulation(cfg, cfg.spec());
}

inline nlohmann::ordered_json manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["version"] = m.version;
  j["config"] = config_to_json(m.config);
  j["termination"] = m.termination;
  j["interactions"] = m.interactions;
  j["dropped_targets"] = m.dropped_targets;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  const ScenarioSpec& spec = m.config.spec();
  for (const RoundReport& r : m.rounds) {
    nlohmann::ordered_json jr;
    jr["round"] = r.round;
    jr["active"] = r.active;
    jr["failed"] = r.failed;
    jr["new_actors"] = r.new_actors;
    jr["new_items"] = r.new_items;
    nlohmann::ordered_json kinds;
    for (ActionKind kind : spec.action_kinds)
      kinds[std::string(to_string(kind))] =
          r.new_edges_by_kind[static_cast<std::size_t>(kind)];
    jr["new_edges"] = kinds;
    jr["queries"] = r.queries;
    jr["formulate_ms"] = r.formulate_ms;
    jr["index_ms"] = r.index_ms;
    jr["interact_ms"] = r.interact_ms;
    jr["merge_ms"] = r.merge_ms;
    jr["total_ms"] = r.total_ms;
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

// nodes.jsonl + edges.tsv + manifest.json + profiles.jsonl (+ exchanges.jsonl
// when a backend ran). Rewrites in place; re-running into the same directory
// is safe.
inline void write_run_outputs(const RunResult& res,
                              const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  save_graph(res.graph, out_dir);
  {
    std::ofstream out = open_out(out_dir / "manifest.json");
    out << manifest_to_json(res.manifest).dump(2) << '\n';
  }
  write_profiles_jsonl(res.profiles, out_dir / "profiles.jsonl");
  if (!res.exchanges.empty())
    write_exchanges_jsonl(res.exchanges, out_dir / "exchanges.jsonl");
}

struct SpeedupRow {
  std::uint32_t ports = 1;
  double ms_per_interaction = 0;
  double reduction_pct = 0;  // vs the first row
};

// Same run at each port count; wall time of the interact phase divided by
// interactions dispatched. The graph must come out identical every time.
inline std::vector<SpeedupRow> measure_speedup(
    const SimConfig& base, const std::vector<std::uint32_t>& port_values) {
  std::vector<SpeedupRow> rows;
  for (std::uint32_t ports : port_values) {
    SimConfig cfg = base;
    cfg.ports = ports;
    RunResult res = run_simulation(cfg);
    double interact_ms = 0;
    for (const RoundReport& r : res.manifest.rounds)
      interact_ms += r.interact_ms;
    SpeedupRow row;
    row.ports = ports;
    row.ms_per_interaction =
        res.manifest.interactions == 0
            ? 0
            : interact_ms / static_cast<double>(res.manifest.interactions);
    row.reduction_pct =
        rows.empty() || rows.front().ms_per_interaction <= 0
            ? 0
            : 100.0 * (1.0 - row.ms_per_interaction /
                                 rows.front().ms_per_interaction);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gag
