#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "gag/agent/policy.hpp"
#include "gag/agent/profile.hpp"
#include "gag/llm/backend.hpp"
#include "gag/llm/parse.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/util/text.hpp"

namespace gag {

struct LlmParams {
  std::uint32_t max_queries = 3;
  std::uint32_t reflect_window = 20;
  std::uint32_t repair_retries = 2;  // extra chats after a ParseError
};

namespace detail {

// Summary line plus the last `window` action bullets; the reply generators
// key off the "- " bullets and "<Label>: <value>" lines this produces.
inline std::string render_memory(const AgentMemory& memory,
                                 std::uint32_t window) {
  std::string out;
  if (!memory.summary.empty()) out += "Summary: " + memory.summary + "\n";
  std::size_t start =
      memory.log.size() > window ? memory.log.size() - window : 0;
  for (std::size_t i = start; i < memory.log.size(); ++i) {
    const MemoryRecord& rec = memory.log[i];
    out += "- round " + std::to_string(rec.round) + " " +
           std::string(to_string(rec.kind)) + ": " + rec.text + "\n";
  }
  if (out.empty()) return "(empty)";
  out.pop_back();
  return out;
}

// Chat, parse, and on ParseError re-ask with a repair suffix. Each retry
// changes the prompt so a deterministic backend can change its answer.
template <typename Parse>
auto chat_parsed(Backend& backend, const std::string& system,
                 const std::string& user, std::uint32_t retries,
                 Parse&& parse) {
  std::string attempt_user = user;
  for (std::uint32_t attempt = 0;; ++attempt) {
    std::string reply = backend.chat(system, attempt_user);
    try {
      return parse(reply);
    } catch (const ParseError& e) {
      if (attempt >= retries) throw;
      attempt_user = user + "\n\nYour previous reply could not be parsed (" +
                     std::string(e.what()) + "; attempt " +
                     std::to_string(attempt + 1) +
                     "). Answer with only the requested shape.";
    }
  }
}

}  // namespace detail

// Agent decisions delegated to a chat backend: reflection, query writing,
// and action selection all render the scenario's prompt templates and parse
// the structured reply. Unresolvable targets are counted, never invented.
class LlmPolicy final : public AgentPolicy {
 public:
  explicit LlmPolicy(Backend& backend, LlmParams params = {})
      : backend_(&backend), params_(params) {}

  std::vector<std::string> make_queries(const ActorContext& ctx,
                                        const AgentProfile& profile,
                                        AgentMemory& memory) override {
    const ScenarioSpec& spec = *ctx.spec;
    if (!memory.log.empty() && memory.last_reflection_round < ctx.round &&
        !spec.reflect_user.empty()) {
      std::string user = fill_template(
          spec.reflect_user,
          {{"actions", detail::render_memory(memory, params_.reflect_window)}});
      Reflection r = detail::chat_parsed(
          *backend_, spec.query_system, user, params_.repair_retries,
          [](const std::string& reply) { return parse_reflection(reply); });
      if (!r.summary.empty()) memory.summary = r.summary;
      memory.last_reflection_round = ctx.round;
    }
    std::string user = fill_template(
        spec.query_user,
        {{"profile", render_profile_text(profile, spec)},
         {"memory", detail::render_memory(memory, params_.reflect_window)},
         {"max_queries", std::to_string(params_.max_queries)}});
    return detail::chat_parsed(
        *backend_, spec.query_system, user, params_.repair_retries,
        [](const std::string& reply) { return parse_queries(reply); });
  }

  ActionSet decide_actions(const ActorContext& ctx,
                           const AgentProfile& profile,
                           const AgentMemory& memory,
                           const Observation& obs) override {
    const ScenarioSpec& spec = *ctx.spec;
    const std::string key_attr = spec.required_item_attrs.front();
    std::string observation;
    std::vector<std::string> keys;
    keys.reserve(obs.unified.size());
    for (std::size_t i = 0; i < obs.unified.size(); ++i) {
      if (!observation.empty()) observation += "\n\n";
      observation += ctx.index->texts[obs.unified_pos[i]];
      keys.push_back(
          ctx.snap->item(obs.unified[i]).attrs.get_or(key_attr, ""));
    }
    if (observation.empty()) observation = "(nothing found)";
    std::string user = fill_template(
        spec.action_user,
        {{"profile", render_profile_text(profile, spec)},
         {"memory", detail::render_memory(memory, params_.reflect_window)},
         {"observation", observation}});
    ParsedAction parsed = detail::chat_parsed(
        *backend_, spec.action_system, user, params_.repair_retries,
        [&](const std::string& reply) {
          return parse_action(reply, spec, ctx.round, ctx.actor, profile.name,
                              obs.unified, keys);
        });
    dropped_targets_ += parsed.dropped;
    return std::move(parsed.actions);
  }

  // Targets the model named but the observation could not resolve.
  std::uint32_t dropped_targets() const { return dropped_targets_.load(); }

 private:
  Backend* backend_;
  LlmParams params_;
  std::atomic<std::uint32_t> dropped_targets_{0};
};

// New-actor profiles via the scenario's formulation prompt. Short replies
// trigger follow-up asks; returns between 1 and `count` profiles.
inline std::vector<AgentProfile> generate_profiles_llm(
    Backend& backend, const ScenarioSpec& spec, std::size_t count,
    std::uint32_t round, std::size_t existing, std::uint32_t retries = 2) {
  if (count == 0) return {};
  const std::string base_user =
      fill_template(spec.profile_user,
                    {{"count", std::to_string(count)},
                     {"round", std::to_string(round)},
                     {"existing", std::to_string(existing)}});
  std::vector<AgentProfile> acc;
  for (std::uint32_t attempt = 0; attempt <= retries; ++attempt) {
    std::string user =
        attempt == 0
            ? base_user
            : base_user + "\n\nOnly " + std::to_string(acc.size()) +
                  " usable records so far; give " +
                  std::to_string(count - acc.size()) +
                  " more distinct records (attempt " +
                  std::to_string(attempt) + ").";
    try {
      for (AgentProfile& p :
           parse_profile_list(backend.chat(spec.profile_system, user), spec)) {
        acc.push_back(std::move(p));
        if (acc.size() == count) return acc;
      }
    } catch (const ParseError&) {
      if (attempt >= retries && acc.empty()) throw;
    }
  }
  if (acc.empty()) throw ParseError("profile formulation produced nothing");
  return acc;
}

// Seed items via the scenario's seed prompt, same accumulation contract.
inline std::vector<AttrMap> generate_seed_items_llm(Backend& backend,
                                                    const ScenarioSpec& spec,
                                                    std::size_t count,
                                                    std::uint32_t retries = 2) {
  if (count == 0) return {};
  if (spec.seed_item_user.empty())
    throw BadSeedSpec(spec.id + " has no seed item prompt");
  const std::string base_user = fill_template(
      spec.seed_item_user, {{"count", std::to_string(count)}});
  std::vector<AttrMap> acc;
  for (std::uint32_t attempt = 0; attempt <= retries; ++attempt) {
    std::string user =
        attempt == 0 ? base_user
                     : base_user + "\n\nGive " +
                           std::to_string(count - acc.size()) +
                           " more distinct records (attempt " +
                           std::to_string(attempt) + ").";
    try {
      for (AttrMap& a :
           parse_seed_items(backend.chat(spec.profile_system, user), spec)) {
        acc.push_back(std::move(a));
        if (acc.size() == count) return acc;
      }
    } catch (const ParseError&) {
      if (attempt >= retries && acc.empty()) throw;
    }
  }
  if (acc.empty()) throw ParseError("seed item generation produced nothing");
  return acc;
}

// Core/regular activation asked of the model: the reply's first word decides.
inline bool activation_llm(Backend& backend, const ScenarioSpec& spec,
                           const std::string& profile_text, bool core,
                           std::size_t history_len, std::uint32_t round) {
  std::string user = fill_template(
      spec.activation_user,
      {{"profile", profile_text},
       {"label", core ? "core" : "regular"},
       {"history_len", std::to_string(history_len)},
       {"round", std::to_string(round)}});
  std::string reply = backend.chat(spec.profile_system, user);
  std::vector<std::string> words = tokenize(reply);
  return !words.empty() && words.front() == "active";
}

}  // namespace gag
