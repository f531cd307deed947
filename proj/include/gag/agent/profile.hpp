#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gag/agent/vocab.hpp"
#include "gag/core/graph.hpp"
#include "gag/core/io.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/util/rng.hpp"
#include "gag/util/text.hpp"

namespace gag {

// Role-playing identity of one actor. `fields` holds the scenario-dependent
// attributes in render order; `topics` mirrors the interest list (SC/SoC
// topics, TC genres) for query making and fine ranking.
struct AgentProfile {
  std::string name;
  AttrMap fields;
  std::vector<std::string> topics;

  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

// Key of the interest list inside `fields`.
inline std::string profile_topics_key(const ScenarioSpec& spec) {
  return spec.topic_attr == "genres" ? "genres" : "topics";
}

struct MemoryRecord {
  std::uint32_t round = 0;
  ActionKind kind = ActionKind::Creation;
  std::uint32_t item = 0;
  std::string text;  // topic attribute of the touched item
};

// Append-only action history plus the rolling reflection digest.
struct AgentMemory {
  std::vector<MemoryRecord> log;
  std::string summary;
  std::uint32_t last_reflection_round = 0;
};

struct Reflection {
  std::string summary;
  std::vector<std::string> keywords;
};

namespace detail {

inline bool is_stopword(std::string_view t) {
  static const char* const words[] = {"the", "a",  "an",   "and",  "or",
                                      "of",  "in", "on",   "for",  "to",
                                      "with", "at", "by",  "from", "about"};
  for (const char* w : words)
    if (t == w) return true;
  return false;
}

inline std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  if (v.empty()) throw ConfigError("empty vocabulary list");
  return v[rng.below(v.size())];
}

inline std::vector<std::string> pick_distinct(const std::vector<std::string>& v,
                                              std::uint32_t k, Rng& rng) {
  if (v.empty()) throw ConfigError("empty vocabulary list");
  std::vector<std::uint32_t> idx =
      rng.sample(static_cast<std::uint32_t>(v.size()), k);
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (std::uint32_t i : idx) out.push_back(v[i]);
  return out;
}

}  // namespace detail

// Frequency digest of the last `window` actions. Keywords are the `top` most
// frequent topic tokens (ties by token); both fallbacks (empty result,
// window=0) use the profile interests so queries never go blank.
inline Reflection reflect(const AgentProfile& profile, const AgentMemory& memory,
                          std::uint32_t window = 20, std::uint32_t top = 3) {
  Reflection out;
  if (window > 0 && !memory.log.empty()) {
    std::map<std::string, std::uint32_t> counts;
    std::size_t begin =
        memory.log.size() > window ? memory.log.size() - window : 0;
    for (std::size_t i = begin; i < memory.log.size(); ++i) {
      for (const std::string& t : tokenize(memory.log[i].text)) {
        if (!detail::is_stopword(t)) counts[t] += 1;
      }
    }
    std::vector<std::pair<std::string, std::uint32_t>> ranked(counts.begin(),
                                                              counts.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) {
                       if (a.second != b.second) return a.second > b.second;
                       return a.first < b.first;
                     });
    for (const auto& [token, count] : ranked) {
      if (out.keywords.size() >= top) break;
      out.keywords.push_back(token);
      if (!out.summary.empty()) out.summary += "; ";
      out.summary += token + ":" + std::to_string(count);
    }
  }
  if (out.keywords.empty()) {
    for (const std::string& t : profile.topics) {
      if (out.keywords.size() >= top) break;
      out.keywords.push_back(t);
    }
    out.summary = "interests: " + join(out.keywords, "; ");
  }
  return out;
}

// "Key: value" lines, profile_fields order first, extras after. Inverse of
// parse_profile_text, so profiles survive a save/load cycle.
inline std::string render_profile_text(const AgentProfile& p,
                                       const ScenarioSpec& spec) {
  std::string out;
  auto emit = [&out](const std::string& key, const std::string& value) {
    out += detail::capitalize(key) + ": " + value + "\n";
  };
  std::vector<std::string> done;
  for (const std::string& f : spec.profile_fields) {
    done.push_back(f);
    if (f == "name") {
      emit(f, p.name);
    } else if (const std::string* v = p.fields.find(f)) {
      emit(f, *v);
    }
  }
  for (const auto& [k, v] : p.fields) {
    if (std::find(done.begin(), done.end(), k) == done.end()) emit(k, v);
  }
  if (!out.empty()) out.pop_back();
  return out;
}

inline AgentProfile parse_profile_text(std::string_view text,
                                       const ScenarioSpec& spec) {
  AgentProfile p;
  for (const std::string& line : split(text, '\n')) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = to_lower(trim(line.substr(0, colon)));
    std::string value = trim(line.substr(colon + 1));
    if (key.empty()) continue;
    if (key == "name") {
      p.name = value;
    } else {
      p.fields.set(key, value);
    }
  }
  if (const std::string* t = p.fields.find(profile_topics_key(spec))) {
    for (const std::string& part : split(*t, ';')) {
      std::string tt = trim(part);
      if (!tt.empty()) p.topics.push_back(tt);
    }
  }
  return p;
}

// Deterministic vocabulary-backed profile. The interest list always lands in
// `fields` too, so it renders into the profile text.
inline AgentProfile synth_profile(const Vocabulary& v, const ScenarioSpec& spec,
                                  Rng& rng) {
  AgentProfile p;
  p.name = detail::pick(v.first_names, rng) + " " + detail::pick(v.last_names, rng);
  if (spec.id == "SC") {
    p.fields.set("expertises", join(detail::pick_distinct(v.expertises, 2, rng), "; "));
    p.fields.set("institution", detail::pick(v.institutions, rng));
    p.fields.set("country", detail::pick(v.countries, rng));
    p.topics = detail::pick_distinct(v.topics, 2 + static_cast<std::uint32_t>(rng.below(2)), rng);
  } else if (spec.id == "TC") {
    p.fields.set("gender", rng.bernoulli(0.5) ? "F" : "M");
    p.fields.set("age", std::to_string(18 + rng.below(50)));
    p.fields.set("job", detail::pick(v.jobs, rng));
    p.topics = detail::pick_distinct(v.genres, 2 + static_cast<std::uint32_t>(rng.below(2)), rng);
  } else {
    p.topics = detail::pick_distinct(v.topics, 2 + static_cast<std::uint32_t>(rng.below(2)), rng);
    p.fields.set("description", "Tweets about " + join(p.topics, " and ") +
                                    ". " + detail::capitalize(detail::pick(v.jobs, rng)) +
                                    " by day.");
  }
  p.fields.set(profile_topics_key(spec), join(p.topics, "; "));
  return p;
}

// The heuristic stack's node formulation: `count` vocabulary-drawn profiles.
// Chat-backed formulation lives with the backend policy layer.
inline std::vector<AgentProfile> generate_profiles(const Vocabulary& v,
                                                   const ScenarioSpec& spec,
                                                   std::uint32_t count,
                                                   Rng& rng) {
  std::vector<AgentProfile> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i)
    out.push_back(synth_profile(v, spec, rng));
  return out;
}

// Attributes of an item created by `profile` in round k. The (round, actor)
// suffix keeps titles unique, so exact-title resolution is unambiguous.
inline AttrMap synth_item_attrs(const ScenarioSpec& spec,
                                const AgentProfile& profile,
                                std::uint32_t round, std::uint32_t actor,
                                Rng& rng) {
  std::string t1 = "general";
  std::string t2 = "general";
  if (!profile.topics.empty()) {
    t1 = profile.topics[rng.below(profile.topics.size())];
    t2 = profile.topics[rng.below(profile.topics.size())];
  }
  std::string tag = "r" + std::to_string(round) + ".a" + std::to_string(actor);
  AttrMap attrs;
  if (spec.id == "SC") {
    attrs.set("title", detail::capitalize(t1) + " and " + detail::capitalize(t2) +
                           ": a Study (" + tag + ")");
    attrs.set("topic", t1);
    attrs.set("abstract", "We examine " + t1 + " with methods from " + t2 +
                              ". Working notes of " + profile.name + ".");
  } else if (spec.id == "SoC") {
    attrs.set("tweet_id", "t." + tag);
    attrs.set("user", profile.name);
    attrs.set("tweet", "Talking about " + t1 + " and " + t2 + " today.");
    attrs.set("topics", t1 == t2 ? t1 : t1 + "; " + t2);
  } else {
    // Scenarios without a creation kind never reach this; custom scenarios
    // get a minimal generic record.
    for (const std::string& req : spec.required_item_attrs)
      attrs.set(req, req == spec.topic_attr ? t1 : t1 + " " + tag);
  }
  return attrs;
}

inline void write_profiles_jsonl(const std::vector<AgentProfile>& profiles,
                                 const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    nlohmann::ordered_json j;
    j["ordinal"] = i;
    j["name"] = profiles[i].name;
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto& [k, v] : profiles[i].fields) fields[k] = v;
    j["fields"] = fields;
    j["topics"] = profiles[i].topics;
    out << j.dump() << "\n";
  }
}

}  // namespace gag
