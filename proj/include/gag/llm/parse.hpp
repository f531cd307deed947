#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gag/agent/policy.hpp"
#include "gag/agent/profile.hpp"
#include "gag/core/types.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/util/text.hpp"

namespace gag {

namespace detail {

// First balanced {...} or [...] block, quote/escape aware, so replies may
// wrap the payload in prose or code fences.
inline std::string extract_first_json(const std::string& text, char open,
                                      char close) {
  std::size_t start = std::string::npos;
  int depth = 0;
  bool in_string = false, escaped = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (start == std::string::npos) {
      if (c == open) {
        start = i;
        depth = 1;
      }
      continue;
    }
    if (escaped) {
      escaped = false;
      continue;
    }
    if (in_string) {
      if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == open) ++depth;
    else if (c == close && --depth == 0)
      return text.substr(start, i - start + 1);
  }
  throw ParseError(std::string("no balanced ") + open + close +
                   " block in reply");
}

inline nlohmann::json first_json_object(const std::string& text) {
  nlohmann::json j =
      nlohmann::json::parse(extract_first_json(text, '{', '}'), nullptr,
                            false);
  if (j.is_discarded() || !j.is_object())
    throw ParseError("reply block is not a JSON object");
  return j;
}

inline nlohmann::json first_json_array(const std::string& text) {
  nlohmann::json j =
      nlohmann::json::parse(extract_first_json(text, '[', ']'), nullptr,
                            false);
  if (j.is_discarded() || !j.is_array())
    throw ParseError("reply block is not a JSON array");
  return j;
}

inline std::string json_scalar(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::vector<std::string> parts;
    for (const nlohmann::json& el : j) parts.push_back(json_scalar(el));
    return join(parts, "; ");
  }
  return j.dump();
}

inline std::vector<std::string> json_string_list(const nlohmann::json& j) {
  std::vector<std::string> out;
  if (j.is_string()) {
    for (std::string& part : split(j.get<std::string>(), ';')) {
      std::string t = trim(part);
      if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
  }
  if (!j.is_array()) return out;
  for (const nlohmann::json& el : j) {
    std::string s = trim(json_scalar(el));
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Bracketed list of profile records -> profiles. Records without a name are
// dropped; interests map to `topics` (TC stores them under "genres").
inline std::vector<AgentProfile> parse_profile_list(const std::string& text,
                                                    const ScenarioSpec& spec) {
  nlohmann::json arr = detail::first_json_array(text);
  const std::string topics_key = profile_topics_key(spec);
  std::vector<AgentProfile> out;
  for (const nlohmann::json& rec : arr) {
    if (!rec.is_object()) continue;
    AgentProfile p;
    for (const auto& [key, value] : rec.items()) {
      std::string k = to_lower(trim(key));
      if (k == "name") p.name = trim(detail::json_scalar(value));
      else if (k == topics_key || (p.topics.empty() && k == "topics"))
        p.topics = detail::json_string_list(value);
      else p.fields.set(k, detail::json_scalar(value));
    }
    if (p.name.empty()) continue;
    if (!p.topics.empty()) p.fields.set(topics_key, join(p.topics, "; "));
    out.push_back(std::move(p));
  }
  if (out.empty()) throw ParseError("profile list has no usable records");
  return out;
}

// Bracketed list of item records -> attribute maps, in reply order. Records
// missing a required attribute are dropped.
inline std::vector<AttrMap> parse_seed_items(const std::string& text,
                                             const ScenarioSpec& spec) {
  nlohmann::json arr = detail::first_json_array(text);
  std::vector<AttrMap> out;
  for (const nlohmann::json& rec : arr) {
    if (!rec.is_object()) continue;
    AttrMap attrs;
    bool complete = true;
    for (const std::string& name : spec.required_item_attrs) {
      std::string value;
      for (const auto& [key, v] : rec.items())
        if (to_lower(trim(key)) == name) {
          value = trim(detail::json_scalar(v));
          break;
        }
      if (value.empty()) {
        complete = false;
        break;
      }
      attrs.set(name, value);
    }
    if (complete) out.push_back(std::move(attrs));
  }
  if (out.empty()) throw ParseError("item list has no usable records");
  return out;
}

// Bracketed list of strings -> search queries.
inline std::vector<std::string> parse_queries(const std::string& text) {
  std::vector<std::string> out =
      detail::json_string_list(detail::first_json_array(text));
  if (out.empty()) throw ParseError("query list is empty");
  return out;
}

inline Reflection parse_reflection(const std::string& text) {
  nlohmann::json j = detail::first_json_object(text);
  Reflection r;
  if (j.contains("summary")) r.summary = detail::json_scalar(j["summary"]);
  if (j.contains("keywords"))
    r.keywords = detail::json_string_list(j["keywords"]);
  return r;
}

struct ParsedAction {
  ActionSet actions;
  std::uint32_t dropped = 0;  // unresolvable or unknown-kind targets
};

namespace detail {

// Closed-world target lookup: exact match on the observed key first, then
// case/space-folded. Items outside the observation can never be hit.
inline std::optional<std::uint32_t> resolve_target(
    const std::string& wanted, const std::vector<std::uint32_t>& obs_items,
    const std::vector<std::string>& obs_keys) {
  for (std::size_t i = 0; i < obs_keys.size(); ++i)
    if (obs_keys[i] == wanted) return obs_items[i];
  const std::string folded = normalized_key(wanted);
  for (std::size_t i = 0; i < obs_keys.size(); ++i)
    if (normalized_key(obs_keys[i]) == folded) return obs_items[i];
  return std::nullopt;
}

}  // namespace detail

// Scenario-shaped action reply -> creation + typed targets. obs_keys[i] is
// the resolution attribute (title / tweet id) of obs_items[i]. Malformed
// shape throws ParseError (caller retries); unresolvable targets are
// counted, not fatal.
inline ParsedAction parse_action(const std::string& text,
                                 const ScenarioSpec& spec,
                                 std::uint32_t round, std::uint32_t actor,
                                 const std::string& actor_name,
                                 const std::vector<std::uint32_t>& obs_items,
                                 const std::vector<std::string>& obs_keys) {
  nlohmann::json j = detail::first_json_object(text);
  ParsedAction out;

  auto resolve = [&](const nlohmann::json& value, ActionKind kind) {
    std::string wanted = trim(detail::json_scalar(value));
    if (wanted.empty()) {
      ++out.dropped;
      return;
    }
    std::optional<std::uint32_t> item =
        detail::resolve_target(wanted, obs_items, obs_keys);
    if (!item) {
      ++out.dropped;
      return;
    }
    out.actions.targets.emplace_back(*item, kind);
  };

  if (spec.has_kind(ActionKind::Rating)) {
    if (!j.contains("ratings") || !j["ratings"].is_array())
      throw ParseError("action reply has no ratings array");
    for (const nlohmann::json& r : j["ratings"]) {
      if (!r.is_object() || !r.contains("title")) {
        ++out.dropped;
        continue;
      }
      resolve(r["title"], ActionKind::Rating);
    }
    return out;
  }

  if (spec.has_kind(ActionKind::Tweet)) {
    std::string tweet =
        j.contains("tweet") ? trim(detail::json_scalar(j["tweet"])) : "";
    if (!tweet.empty()) {
      std::vector<std::string> topics =
          j.contains("topics") ? detail::json_string_list(j["topics"])
                               : std::vector<std::string>{};
      AttrMap attrs;
      attrs.set("tweet_id", "t.r" + std::to_string(round) + ".a" +
                                std::to_string(actor));
      attrs.set("user", actor_name);
      attrs.set("tweet", tweet);
      if (!topics.empty()) attrs.set("topics", join(topics, "; "));
      out.actions.new_item = std::move(attrs);
    }
    if (j.contains("actions")) {
      if (!j["actions"].is_array())
        throw ParseError("actions field is not an array");
      for (const nlohmann::json& a : j["actions"]) {
        if (!a.is_object() || !a.contains("type") || !a.contains("target")) {
          ++out.dropped;
          continue;
        }
        std::string type = to_lower(trim(detail::json_scalar(a["type"])));
        ActionKind kind;
        if (type == "retweet") kind = ActionKind::Retweet;
        else if (type == "reply") kind = ActionKind::Reply;
        else if (type == "follow") kind = ActionKind::Follow;
        else {
          ++out.dropped;
          continue;
        }
        resolve(a["target"], kind);
      }
    }
    if (!out.actions.new_item && out.actions.targets.empty() &&
        out.dropped == 0)
      throw ParseError("action reply proposes nothing");
    return out;
  }

  // Paper shape: one new item plus citations.
  if (!j.contains("title"))
    throw ParseError("action reply has no title");
  std::string title = trim(detail::json_scalar(j["title"]));
  if (title.empty()) throw ParseError("action reply title is empty");
  std::vector<std::string> keywords =
      j.contains("keywords") ? detail::json_string_list(j["keywords"])
                             : std::vector<std::string>{};
  AttrMap attrs;
  attrs.set("title", title);
  attrs.set("topic", keywords.empty() ? "general" : keywords.front());
  attrs.set("abstract", j.contains("abstract")
                            ? trim(detail::json_scalar(j["abstract"]))
                            : std::string("(none)"));
  out.actions.new_item = std::move(attrs);
  std::vector<ActionKind> cite_kinds = spec.non_creation_kinds();
  if (j.contains("citations") && !cite_kinds.empty()) {
    if (!j["citations"].is_array())
      throw ParseError("citations field is not an array");
    ActionKind cite = spec.has_kind(ActionKind::Citation)
                          ? ActionKind::Citation
                          : cite_kinds.front();
    for (const nlohmann::json& c : j["citations"]) resolve(c, cite);
  }
  return out;
}

}  // namespace gag
