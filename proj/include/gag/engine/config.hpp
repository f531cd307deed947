#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gag/agent/policy.hpp"
#include "gag/engine/seed.hpp"
#include "gag/llm/backend.hpp"
#include "gag/llm/llm_policy.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/srag/index.hpp"

namespace gag {

enum class PolicyKind : std::uint8_t { Heuristic, Llm };

inline PolicyKind policy_kind_from(std::string_view name) {
  if (name == "heuristic") return PolicyKind::Heuristic;
  if (name == "llm") return PolicyKind::Llm;
  throw ConfigError("unknown policy kind: " + std::string(name));
}

inline std::string_view to_string(PolicyKind kind) {
  return kind == PolicyKind::Heuristic ? "heuristic" : "llm";
}

// Fully resolved run description. Unset fields inherit the scenario's
// defaults during resolve_config; manifest.json records the final values.
struct SimConfig {
  std::string scenario_id = "SoC";
  SeedSpec seed;
  std::uint32_t rounds = 0;  // cap; reach-based scenarios may stop earlier
  ActivationDefaults activation;
  std::uint32_t profiles_per_round = 0;
  SragConfig srag;
  PolicyKind policy_kind = PolicyKind::Heuristic;
  HeuristicParams heuristic;
  LlmParams llm;
  BackendConfig backend;
  std::uint32_t ports = 1;
  std::uint64_t rng_seed = 7;
  std::uint32_t injected_latency_ms = 0;
  std::string out_dir;
  std::string vocab_dir;

  const ScenarioSpec& spec() const { return scenario_by_id(scenario_id); }

  void validate() const { validate(spec()); }

  void validate(const ScenarioSpec& s) const {
    if (ports < 1) throw ConfigError("ports must be >= 1");
    if (rounds < 1) throw ConfigError("rounds must be >= 1");
    srag.validate(s);
    heuristic.validate();
    if (backend.kind == BackendConfig::Kind::Replay &&
        backend.replay_path.empty())
      throw ConfigError("replay backend needs backend.replay_path");
  }
};

namespace detail {

inline bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = to_lower(trim(value));
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

inline std::uint64_t parse_u64(const std::string& key,
                               const std::string& value) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(trim(value), &used);
    if (used != trim(value).size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

inline std::uint32_t parse_u32(const std::string& key,
                               const std::string& value) {
  std::uint64_t v = parse_u64(key, value);
  if (v > 0xffffffffull)
    throw ConfigError(key + ": value out of range: " + value);
  return static_cast<std::uint32_t>(v);
}

inline double parse_f64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(trim(value), &used);
    if (used != trim(value).size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

inline ActivationDefaults::Mode parse_activation_mode(
    const std::string& value) {
  std::string v;
  for (char c : to_lower(trim(value)))
    if (c != '_' && c != '-') v.push_back(c);
  if (v == "all") return ActivationDefaults::Mode::All;
  if (v == "randomsample") return ActivationDefaults::Mode::RandomSample;
  if (v == "coreregular") return ActivationDefaults::Mode::CoreRegular;
  throw ConfigError("unknown activation mode: " + value);
}

// One setter for every source (file keys and flag overrides), so precedence
// is purely application order. Aliases keep the CLI flags short.
inline void apply_config_kv(SimConfig& cfg, const std::string& raw_key,
                            const std::string& value) {
  std::string key = to_lower(trim(raw_key));
  for (char& c : key)
    if (c == '-') c = '_';
  if (key == "n_r") key = "srag.n_r";
  else if (key == "n_f") key = "srag.n_f";
  else if (key == "hub_rate") key = "srag.hub_rate";
  else if (key == "rerank") key = "srag.rerank_enabled";
  else if (key == "model") key = "backend.model";
  else if (key == "seed" || key == "seed.source") key = "seed_source";

  if (key == "scenario") cfg.scenario_id = trim(value);
  else if (key == "seed_source") cfg.seed.source = trim(value);
  else if (key == "seed.actors") cfg.seed.actors = parse_u32(key, value);
  else if (key == "seed.items") cfg.seed.items = parse_u32(key, value);
  else if (key == "seed.edges") cfg.seed.edges = parse_u32(key, value);
  else if (key == "rounds") cfg.rounds = parse_u32(key, value);
  else if (key == "profiles_per_round")
    cfg.profiles_per_round = parse_u32(key, value);
  else if (key == "activation.mode")
    cfg.activation.mode = parse_activation_mode(value);
  else if (key == "activation.count")
    cfg.activation.count = parse_u32(key, value);
  else if (key == "activation.hub_rate" || key == "srag.hub_rate") {
    // one knob, reachable from either side it influences
    cfg.srag.hub_rate = parse_f64(key, value);
    cfg.activation.hub_rate = cfg.srag.hub_rate;
  } else if (key == "srag.n_r") cfg.srag.n_r = parse_u32(key, value);
  else if (key == "srag.n_f") cfg.srag.n_f = parse_u32(key, value);
  else if (key == "srag.rerank_enabled")
    cfg.srag.rerank_enabled = parse_bool(key, value);
  else if (key == "srag.embed_dim")
    cfg.srag.embed_dim = parse_u32(key, value);
  else if (key == "srag.max_queries") {
    cfg.srag.max_queries = parse_u32(key, value);
    cfg.llm.max_queries = cfg.srag.max_queries;
  } else if (key == "policy.kind")
    cfg.policy_kind = policy_kind_from(trim(value));
  else if (key == "policy.cite_fraction")
    cfg.heuristic.cite_fraction = parse_f64(key, value);
  else if (key == "policy.create_probability")
    cfg.heuristic.create_probability = parse_f64(key, value);
  else if (key == "policy.reflect_window") {
    cfg.heuristic.reflect_window = parse_u32(key, value);
    cfg.llm.reflect_window = cfg.heuristic.reflect_window;
  } else if (key == "policy.reflect_top")
    cfg.heuristic.reflect_top = parse_u32(key, value);
  else if (key == "policy.repair_retries")
    cfg.llm.repair_retries = parse_u32(key, value);
  else if (key == "backend.kind" || key == "backend")
    cfg.backend.kind = backend_kind_from(to_lower(trim(value)));
  else if (key == "backend.seed") cfg.backend.seed = parse_u64(key, value);
  else if (key == "backend.base_url") cfg.backend.remote.base_url = trim(value);
  else if (key == "backend.model")
    cfg.backend.remote.model_name = trim(value);
  else if (key == "backend.embed_model")
    cfg.backend.remote.embed_model_name = trim(value);
  else if (key == "backend.timeout_ms")
    cfg.backend.remote.timeout_ms = parse_u32(key, value);
  else if (key == "backend.max_retries")
    cfg.backend.remote.max_retries = parse_u32(key, value);
  else if (key == "backend.replay_path") cfg.backend.replay_path = trim(value);
  else if (key == "ports") cfg.ports = parse_u32(key, value);
  else if (key == "rng_seed") cfg.rng_seed = parse_u64(key, value);
  else if (key == "injected_latency_ms")
    cfg.injected_latency_ms = parse_u32(key, value);
  else if (key == "out_dir") cfg.out_dir = trim(value);
  else if (key == "vocab_dir") cfg.vocab_dir = trim(value);
  else throw ConfigError("unknown config key: " + raw_key);
}

inline void flatten_json(const nlohmann::json& j, const std::string& prefix,
                         std::vector<std::pair<std::string, std::string>>& out) {
  if (!j.is_object())
    throw ConfigError("config value for '" + prefix + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    std::string full = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      // "seed": {...} nests; "seed": "synthetic" is shorthand for the source
      flatten_json(value, full, out);
    } else if (value.is_array()) {
      throw ConfigError("config key '" + full + "' cannot be an array");
    } else if (value.is_string()) {
      out.emplace_back(full, value.get<std::string>());
    } else {
      out.emplace_back(full, value.dump());
    }
  }
}

}  // namespace detail

// Per-scenario defaults, installed before any file/flag value applies.
inline void init_scenario_defaults(SimConfig& cfg) {
  const ScenarioSpec& spec = cfg.spec();
  cfg.rounds = spec.termination.kind == Termination::Kind::Rounds
                   ? static_cast<std::uint32_t>(spec.termination.count)
                   : 100000;  // reach-based scenarios stop themselves
  cfg.activation = spec.activation;
  cfg.activation.hub_rate = cfg.srag.hub_rate;
  cfg.profiles_per_round = spec.profiles_per_round;
  cfg.heuristic.cite_fraction = spec.default_cite_fraction;
  cfg.heuristic.create_probability = spec.default_create_probability;
  cfg.srag.n_f = static_cast<std::uint32_t>(spec.filter_items.size());
}

// defaults < config file < explicit overrides, applied in that order.
// Unknown keys from either source are rejected.
inline SimConfig resolve_config(
    const std::optional<std::filesystem::path>& file,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::vector<std::pair<std::string, std::string>> kv;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot open config file " + file->string());
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
      throw ConfigError(file->string() + " is not valid JSON");
    detail::flatten_json(j, "", kv);
  }
  kv.insert(kv.end(), overrides.begin(), overrides.end());

  SimConfig cfg;
  for (const auto& [key, value] : kv)
    if (to_lower(trim(key)) == "scenario") cfg.scenario_id = trim(value);
  init_scenario_defaults(cfg);  // fails fast on an unknown scenario
  for (const auto& [raw_key, value] : kv)
    detail::apply_config_kv(cfg, raw_key, value);
  cfg.validate();
  return cfg;
}

inline nlohmann::ordered_json config_to_json(const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["scenario"] = cfg.scenario_id;
  j["seed"] = {{"source", cfg.seed.source},
               {"actors", cfg.seed.actors},
               {"items", cfg.seed.items},
               {"edges", cfg.seed.edges}};
  j["rounds"] = cfg.rounds;
  const char* mode =
      cfg.activation.mode == ActivationDefaults::Mode::All ? "all"
      : cfg.activation.mode == ActivationDefaults::Mode::RandomSample
          ? "random_sample"
          : "core_regular";
  j["activation"] = {{"mode", mode},
                     {"count", cfg.activation.count},
                     {"hub_rate", cfg.activation.hub_rate}};
  j["profiles_per_round"] = cfg.profiles_per_round;
  j["srag"] = {{"n_r", cfg.srag.n_r},
               {"n_f", cfg.srag.n_f},
               {"rerank_enabled", cfg.srag.rerank_enabled},
               {"hub_rate", cfg.srag.hub_rate},
               {"embed_dim", cfg.srag.embed_dim},
               {"max_queries", cfg.srag.max_queries}};
  j["policy"] = {{"kind", std::string(to_string(cfg.policy_kind))},
                 {"cite_fraction", cfg.heuristic.cite_fraction},
                 {"create_probability", cfg.heuristic.create_probability},
                 {"reflect_window", cfg.heuristic.reflect_window},
                 {"reflect_top", cfg.heuristic.reflect_top}};
  j["backend"] = {{"kind", std::string(to_string(cfg.backend.kind))},
                  {"seed", cfg.backend.seed}};
  if (cfg.backend.kind == BackendConfig::Kind::Remote) {
    j["backend"]["base_url"] = cfg.backend.remote.base_url;
    j["backend"]["model"] = cfg.backend.remote.model_name;
    j["backend"]["embed_model"] = cfg.backend.remote.embed_model_name;
    j["backend"]["timeout_ms"] = cfg.backend.remote.timeout_ms;
    j["backend"]["max_retries"] = cfg.backend.remote.max_retries;
  }
  if (cfg.backend.kind == BackendConfig::Kind::Replay)
    j["backend"]["replay_path"] = cfg.backend.replay_path;
  j["ports"] = cfg.ports;
  j["rng_seed"] = cfg.rng_seed;
  j["injected_latency_ms"] = cfg.injected_latency_ms;
  if (!cfg.out_dir.empty()) j["out_dir"] = cfg.out_dir;
  if (!cfg.vocab_dir.empty()) j["vocab_dir"] = cfg.vocab_dir;
  return j;
}

}  // namespace gag
