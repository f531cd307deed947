#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gag/agent/profile.hpp"
#include "gag/srag/index.hpp"
#include "gag/util/rng.hpp"

namespace gag {

// Exactly ceil(hub_rate * n) actors marked core, picked by descending
// history length with ties to the lower ordinal. The tie rule makes the
// labeling a total order, hence replayable.
inline std::vector<char> label_core(const std::vector<std::size_t>& history_lengths,
                                    double hub_rate) {
  if (hub_rate < 0.0 || hub_rate > 1.0)
    throw InvalidParams("hub_rate must be in [0, 1]");
  std::size_t n = history_lengths.size();
  auto want = static_cast<std::size_t>(
      std::ceil(hub_rate * static_cast<double>(n)));
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::sort(order.begin(), order.end(),
            [&history_lengths](std::uint32_t a, std::uint32_t b) {
              if (history_lengths[a] != history_lengths[b])
                return history_lengths[a] > history_lengths[b];
              return a < b;
            });
  std::vector<char> core(n, 0);
  for (std::size_t i = 0; i < want && i < n; ++i) core[order[i]] = 1;
  return core;
}

// Per-round active set, ascending ordinals. CoreRegular draws one Bernoulli
// per actor in ordinal order so the stream layout is schedule-independent.
inline std::vector<std::uint32_t> activate(std::uint32_t n,
                                           const std::vector<char>& core,
                                           const ActivationDefaults& policy,
                                           Rng& rng, double p_core = 0.8,
                                           double p_reg = 0.2) {
  std::vector<std::uint32_t> active;
  switch (policy.mode) {
    case ActivationDefaults::Mode::All:
      active.resize(n);
      for (std::uint32_t i = 0; i < n; ++i) active[i] = i;
      break;
    case ActivationDefaults::Mode::RandomSample: {
      active = rng.sample(n, policy.count);
      std::sort(active.begin(), active.end());
      break;
    }
    case ActivationDefaults::Mode::CoreRegular:
      for (std::uint32_t i = 0; i < n; ++i) {
        if (rng.bernoulli(core[i] ? p_core : p_reg)) active.push_back(i);
      }
      break;
  }
  return active;
}

// What one actor decided this round: at most one new item (the creation edge
// is implied) plus typed edges into the observation.
struct ActionSet {
  std::optional<AttrMap> new_item;
  std::vector<std::pair<std::uint32_t, ActionKind>> targets;
};

// Read-only surroundings of one decision. rng is the actor's private
// (seed, round, ordinal) stream; index carries the observation texts.
struct ActorContext {
  const ScenarioSpec* spec = nullptr;
  std::uint32_t actor = 0;
  std::uint32_t round = 0;
  Rng* rng = nullptr;
  const VectorIndex* index = nullptr;
  const ItemSnapshot* snap = nullptr;
};

// Decision interface: queries first (Q_{i,k}), actions after the observation
// comes back. make_queries may refresh memory.summary (reflection runs
// before querying). Implementations must be callable concurrently on
// disjoint actors.
class AgentPolicy {
 public:
  virtual ~AgentPolicy() = default;
  virtual std::vector<std::string> make_queries(const ActorContext& ctx,
                                                const AgentProfile& profile,
                                                AgentMemory& memory) = 0;
  virtual ActionSet decide_actions(const ActorContext& ctx,
                                   const AgentProfile& profile,
                                   const AgentMemory& memory,
                                   const Observation& obs) = 0;
};

struct HeuristicParams {
  double cite_fraction = 0.3;
  double create_probability = 0.0;
  std::uint32_t reflect_window = 20;
  std::uint32_t reflect_top = 3;

  void validate() const {
    if (cite_fraction < 0.0 || cite_fraction > 1.0)
      throw ConfigError("cite_fraction must be in [0, 1]");
    if (create_probability < 0.0 || create_probability > 1.0)
      throw ConfigError("create_probability must be in [0, 1]");
  }
};

namespace detail {

// Edge kinds a heuristic actor cycles through when targeting observed items.
// Follow moves to the front so relationship edges appear even when an actor
// targets a single item.
inline std::vector<ActionKind> target_kinds(const ScenarioSpec& spec) {
  std::vector<ActionKind> kinds = spec.non_creation_kinds();
  auto it = std::find(kinds.begin(), kinds.end(), ActionKind::Follow);
  if (it != kinds.end()) std::rotate(kinds.begin(), it, it + 1);
  return kinds;
}

}  // namespace detail

// Deterministic stand-in for the chat-driven decision layer: queries are the
// reflection keywords; one creation with probability create_probability; the
// first ceil(cite_fraction * |O|) observed items get non-creation edges.
class HeuristicPolicy final : public AgentPolicy {
 public:
  explicit HeuristicPolicy(HeuristicParams params) : params_(params) {
    params_.validate();
  }

  std::vector<std::string> make_queries(const ActorContext& ctx,
                                        const AgentProfile& profile,
                                        AgentMemory& memory) override {
    Reflection r = reflect(profile, memory, params_.reflect_window,
                           params_.reflect_top);
    memory.summary = r.summary;
    memory.last_reflection_round = ctx.round;
    return r.keywords;
  }

  ActionSet decide_actions(const ActorContext& ctx, const AgentProfile& profile,
                           const AgentMemory& memory,
                           const Observation& obs) override {
    (void)memory;
    ActionSet out;
    if (ctx.spec->creation_kind &&
        ctx.rng->bernoulli(params_.create_probability)) {
      out.new_item = synth_item_attrs(*ctx.spec, profile, ctx.round, ctx.actor,
                                      *ctx.rng);
    }
    std::vector<ActionKind> kinds = detail::target_kinds(*ctx.spec);
    if (!kinds.empty() && !obs.unified.empty()) {
      auto n_t = static_cast<std::size_t>(std::ceil(
          params_.cite_fraction * static_cast<double>(obs.unified.size())));
      n_t = std::min(n_t, obs.unified.size());
      for (std::size_t t = 0; t < n_t; ++t)
        out.targets.emplace_back(obs.unified[t], kinds[t % kinds.size()]);
    }
    return out;
  }

 private:
  HeuristicParams params_;
};

}  // namespace gag
