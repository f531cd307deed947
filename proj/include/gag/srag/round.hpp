#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gag/agent/policy.hpp"
#include "gag/agent/profile.hpp"
#include "gag/srag/embed.hpp"
#include "gag/srag/index.hpp"
#include "gag/util/rng.hpp"

namespace gag {

// Purpose tags for derived RNG streams. Keyed alongside (seed, round, actor)
// so no consumer can perturb another's draws.
namespace stream {
inline constexpr std::uint64_t kProfiles = 1;
inline constexpr std::uint64_t kActivate = 2;
inline constexpr std::uint64_t kActor = 3;
inline constexpr std::uint64_t kSeedGraph = 4;
}  // namespace stream

// Everything one actor produced this round. Edges reference snapshot items
// only; the creation edge for new_item is implied and materialized at merge.
struct ActorDelta {
  std::uint32_t actor = 0;
  std::optional<AttrMap> new_item;
  std::vector<std::pair<std::uint32_t, ActionKind>> edges;
  std::uint32_t queries = 0;
  bool failed = false;
  std::string error;
};

// Creators of the items this actor follows, ascending and deduplicated.
inline std::vector<std::uint32_t> followed_creators(const BipartiteGraph& g,
                                                    std::uint32_t actor,
                                                    ActionKind creation_kind) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e : g.edges_of_actor(actor)) {
    const TypedEdge& edge = g.edges()[e];
    if (edge.kind != ActionKind::Follow) continue;
    for (std::uint32_t author : g.authors_of(edge.item, creation_kind))
      out.push_back(author);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Subset of `followed` that follows `actor` back (mutual pairs).
inline std::vector<std::uint32_t> mutual_follows(
    const BipartiteGraph& g, std::uint32_t actor,
    const std::vector<std::uint32_t>& followed, ActionKind creation_kind) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b : followed) {
    bool back = false;
    for (std::uint32_t e : g.edges_of_actor(b)) {
      const TypedEdge& edge = g.edges()[e];
      if (edge.kind != ActionKind::Follow) continue;
      std::vector<std::uint32_t> authors =
          g.authors_of(edge.item, creation_kind);
      if (std::binary_search(authors.begin(), authors.end(), actor)) {
        back = true;
        break;
      }
    }
    if (back) out.push_back(b);
  }
  return out;
}

// One actor's full pipeline against the frozen snapshot: reflect -> queries
// -> per-query recall (+ coarse/fine rerank) -> unified observation ->
// decide. Pure up to the actor's own rng stream and memory digest, so
// workers can run it on disjoint actors in any schedule.
inline ActorDelta run_actor(const ItemSnapshot& snap, const VectorIndex& idx,
                            const ScenarioSpec& spec, const SragConfig& cfg,
                            const Encoder& encoder, AgentPolicy& policy,
                            const AgentProfile& profile, AgentMemory& memory,
                            std::uint32_t actor, std::uint32_t round,
                            Rng rng) {
  ActorDelta delta;
  delta.actor = actor;

  ActorContext ctx{&spec, actor, round, &rng, &idx, &snap};
  std::vector<std::string> queries = policy.make_queries(ctx, profile, memory);
  if (queries.size() > cfg.max_queries) queries.resize(cfg.max_queries);
  delta.queries = static_cast<std::uint32_t>(queries.size());

  std::vector<std::uint32_t> followed, friends;
  FineContext fine{&spec, &snap, &profile.topics, nullptr, nullptr};
  if (cfg.rerank_enabled && cfg.n_f > 0 &&
      spec.has_kind(ActionKind::Follow) && spec.creation_kind) {
    followed = followed_creators(snap.graph(), actor, *spec.creation_kind);
    friends = mutual_follows(snap.graph(), actor, followed, *spec.creation_kind);
    fine.followed = &followed;
    fine.friends = &friends;
  }

  std::vector<std::vector<ScoredItem>> per_query;
  per_query.reserve(queries.size());
  for (const std::string& q : queries) {
    std::vector<ScoredItem> results = recall(idx, encoder, q, cfg.n_r);
    if (cfg.rerank_enabled) {
      std::size_t boundary = rerank_coarse(results, idx.creator_core);
      if (cfg.n_f > 0) {
        rerank_fine(results, 0, boundary, fine, cfg.n_f);
        rerank_fine(results, boundary, results.size(), fine, cfg.n_f);
      }
    }
    per_query.push_back(std::move(results));
  }
  Observation obs = assemble_observation(std::move(per_query));

  ActionSet actions = policy.decide_actions(ctx, profile, memory, obs);
  for (const auto& [item, kind] : actions.targets) {
    if (item >= snap.size())
      throw DanglingEndpoint("target item " + std::to_string(item) +
                             " outside the round snapshot");
    if (!spec.has_kind(kind))
      throw UnknownActionKind(std::string(to_string(kind)) +
                              " returned by policy for " + spec.id);
  }
  delta.new_item = std::move(actions.new_item);
  delta.edges = std::move(actions.targets);
  return delta;
}

struct RoundDeltas {
  std::vector<ActorDelta> per_actor;  // active-ordinal order
};

// Serial reference composition of run_actor over the active set; the engine
// runs the identical per-actor pipeline under its worker pool. A failing
// actor is recorded and skipped — the round always completes.
inline RoundDeltas run_round(
    const BipartiteGraph& g, std::uint32_t round,
    const std::vector<std::uint32_t>& active, AgentPolicy& policy,
    const std::vector<AgentProfile>& profiles, std::vector<AgentMemory>& memories,
    const Encoder& encoder, const SragConfig& cfg, const ScenarioSpec& spec,
    std::uint64_t rng_seed,
    const std::function<std::string(std::uint32_t)>& actor_name = {}) {
  ItemSnapshot snap = g.snapshot(round);
  VectorIndex idx = index_items(snap, spec, encoder, actor_name);
  RoundDeltas out;
  out.per_actor.reserve(active.size());
  for (std::uint32_t a : active) {
    ActorDelta delta;
    try {
      delta = run_actor(snap, idx, spec, cfg, encoder, policy, profiles.at(a),
                        memories.at(a), a, round,
                        derive_rng(rng_seed, round, a, stream::kActor));
    } catch (const std::exception& e) {
      delta = ActorDelta{};
      delta.failed = true;
      delta.error = e.what();
    }
    delta.actor = a;
    out.per_actor.push_back(std::move(delta));
  }
  return out;
}

}  // namespace gag
