#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gag/core/fold.hpp"
#include "gag/core/graph.hpp"
#include "gag/core/types.hpp"
#include "gag/util/text.hpp"

namespace gag {

struct Termination {
  enum class Kind : std::uint8_t { Rounds, NodesReached, EdgesReached };
  Kind kind = Kind::Rounds;
  FoldName fold = FoldName::PaperCitation;  // for *Reached
  std::uint64_t count = 1;
};

struct ActivationDefaults {
  enum class Mode : std::uint8_t { All, RandomSample, CoreRegular };
  Mode mode = Mode::RandomSample;
  std::uint32_t count = 50;  // RandomSample
  double hub_rate = 0.2;     // CoreRegular
};

// Everything that distinguishes the three simulation domains: the node and
// edge vocabulary, text templates, ranking filters, projections, stopping
// rule, and per-round defaults. Custom scenarios are plain instances.
struct ScenarioSpec {
  std::string id;          // "SC" | "TC" | "SoC"
  std::string actor_noun;  // author / watcher / user
  std::string item_noun;   // paper / movie / tweet

  std::vector<ActionKind> action_kinds;
  std::optional<ActionKind> creation_kind;

  std::string item_template;  // {{slot}} per required attr
  std::vector<std::string> required_item_attrs;
  bool include_edge_features = false;  // append 1-hop authorship to item text
  // Item attribute recorded into actor memories and matched by the "topic"
  // fine-ranking filter (SC: topic, TC: genres, SoC: topics).
  std::string topic_attr;

  std::vector<std::string> profile_fields;
  // Ranking filters, most important first; n_f selects a prefix.
  std::vector<std::string> filter_items;

  std::vector<FoldName> fold_specs;
  Termination termination;

  std::uint32_t profiles_per_round = 25;
  ActivationDefaults activation;
  double default_create_probability = 0.0;
  double default_cite_fraction = 0.3;

  // Prompt templates for the chat-backed agent stack.
  std::string profile_system, profile_user;
  std::string query_system, query_user;
  std::string action_system, action_user;
  std::string activation_user;
  std::string reflect_user;
  std::string seed_item_user;  // backend-built seed graphs only

  bool has_kind(ActionKind k) const {
    for (ActionKind a : action_kinds)
      if (a == k) return true;
    return false;
  }

  std::vector<ActionKind> non_creation_kinds() const {
    std::vector<ActionKind> out;
    for (ActionKind a : action_kinds)
      if (!creation_kind || a != *creation_kind) out.push_back(a);
    return out;
  }

  void validate() const {
    if (creation_kind && !has_kind(*creation_kind))
      throw SpecScenarioMismatch("creation_kind " +
                                 std::string(to_string(*creation_kind)) +
                                 " is not an action kind of " + id);
    for (FoldName f : fold_specs) {
      for (ActionKind k : fold_spec(f).via) {
        if (!has_kind(k))
          throw SpecScenarioMismatch(std::string(to_string(f)) +
                                     " references edge kind " +
                                     std::string(to_string(k)) +
                                     " undefined in " + id);
      }
    }
    if (required_item_attrs.empty())
      throw SpecScenarioMismatch(id + ": no required item attrs");
  }
};

namespace detail {

inline ScenarioSpec make_sc() {
  ScenarioSpec s;
  s.id = "SC";
  s.actor_noun = "author";
  s.item_noun = "paper";
  s.action_kinds = {ActionKind::Creation, ActionKind::Citation};
  s.creation_kind = ActionKind::Creation;
  s.item_template =
      "Node Feature: Academic paper.\n"
      "Title: {{title}}\n"
      "Topic: {{topic}}\n"
      "Abstract: {{abstract}}\n"
      "Edge Feature: The citation/writing relationship connecting papers and "
      "authors.";
  s.required_item_attrs = {"title", "topic", "abstract"};
  s.include_edge_features = true;
  s.topic_attr = "topic";
  s.profile_fields = {"name", "expertises", "institution", "country", "topics"};
  s.filter_items = {"topic"};
  s.fold_specs = {FoldName::PaperCitation, FoldName::BibCoupling,
                  FoldName::CoCitation, FoldName::AuthorCitation,
                  FoldName::CoAuthorship};
  s.termination = {Termination::Kind::NodesReached, FoldName::PaperCitation,
                   10000};
  s.profiles_per_round = 30;
  s.activation = {ActivationDefaults::Mode::RandomSample, 50, 0.2};
  s.default_create_probability = 1.0;
  s.default_cite_fraction = 0.3;

  s.profile_system = "You are an author in an academic social network.";
  s.profile_user =
      "Please give me a list of {{count}} different authors with name, "
      "expertises, institution, country and topics. Round {{round}}, "
      "{{existing}} authors already exist; make the new ones distinct.\n"
      "Answer with only a bracketed list of records like:\n"
      "[{\"name\": \"...\", \"expertises\": [\"...\"], \"institution\": "
      "\"...\", \"country\": \"...\", \"topics\": [\"...\"]}]";
  s.query_system = "You are an author searching an academic paper database.";
  s.query_user =
      "Author profile:\n{{profile}}\n\nResearch memory:\n{{memory}}\n\n"
      "Give up to {{max_queries}} short descriptive keywords for papers you "
      "want to read next. Answer with only a bracketed list of strings.";
  s.action_system =
      "You are an author deciding which papers to write and cite.";
  s.action_user =
      "Author profile:\n{{profile}}\n\nResearch memory:\n{{memory}}\n\n"
      "Environment observation (papers you can cite):\n{{observation}}\n\n"
      "Write one new paper on your topics and cite observed papers by exact "
      "title. Answer with only a JSON object:\n"
      "{\"title\": \"...\", \"keywords\": [\"...\"], \"abstract\": \"...\", "
      "\"citations\": [\"exact observed title\", ...]}";
  s.activation_user =
      "Author profile:\n{{profile}}\nLabel: {{label}}\nActions so far: "
      "{{history_len}}\nRound {{round}}: do you work on a paper now? "
      "Answer with only the word active or idle.";
  s.reflect_user =
      "Recent research actions:\n{{actions}}\n\nSummarize your current "
      "interests. Answer with only a JSON object: {\"summary\": \"...\", "
      "\"keywords\": [\"...\"]}";
  s.seed_item_user =
      "Please give me a list of {{count}} different well-known papers with "
      "title, topic and abstract. Answer with only a bracketed list of "
      "records like:\n"
      "[{\"title\": \"...\", \"topic\": \"...\", \"abstract\": \"...\"}]";
  return s;
}

inline ScenarioSpec make_tc() {
  ScenarioSpec s;
  s.id = "TC";
  s.actor_noun = "watcher";
  s.item_noun = "movie";
  s.action_kinds = {ActionKind::Rating};
  s.creation_kind = std::nullopt;  // watchers never add movies
  s.item_template =
      "Node Feature: Movie.\n"
      "Title: {{title}}\n"
      "Genres: {{genres}}\n"
      "Content: {{content}}\n"
      "Edge Feature: The movie rating data connecting watchers and movies.";
  s.required_item_attrs = {"title", "genres", "content"};
  s.include_edge_features = false;
  s.topic_attr = "genres";
  s.profile_fields = {"name", "gender", "age", "job"};
  s.filter_items = {"genre"};
  s.fold_specs = {FoldName::MovieRating, FoldName::UserProjection};
  s.termination = {Termination::Kind::EdgesReached, FoldName::MovieRating,
                   100000};
  s.profiles_per_round = 25;
  s.activation = {ActivationDefaults::Mode::All, 0, 0.2};
  s.default_create_probability = 0.0;
  s.default_cite_fraction = 0.3;

  s.profile_system = "You are a movie watcher on a rating platform.";
  s.profile_user =
      "Please give me a list of {{count}} different watcher profiles with "
      "name, gender, age and job. Round {{round}}, {{existing}} watchers "
      "already exist; make the new ones distinct.\n"
      "Answer with only a bracketed list of records like:\n"
      "[{\"name\": \"...\", \"gender\": \"F\", \"age\": \"25\", \"job\": "
      "\"...\"}]";
  s.query_system = "You are a movie watcher searching a movie catalogue.";
  s.query_user =
      "Watcher profile:\n{{profile}}\n\nViewing memory:\n{{memory}}\n\n"
      "Give up to {{max_queries}} short keywords (genres, moods) for movies "
      "to watch next. Answer with only a bracketed list of strings.";
  s.action_system = "You are a movie watcher deciding which movies to rate.";
  s.action_user =
      "Watcher profile:\n{{profile}}\n\nViewing memory:\n{{memory}}\n\n"
      "Environment observation (movies you can rate):\n{{observation}}\n\n"
      "Rate the observed movies you would actually watch, by exact title. "
      "Answer with only a JSON object:\n"
      "{\"ratings\": [{\"title\": \"exact observed title\", \"score\": 1-5}]}";
  s.activation_user =
      "Watcher profile:\n{{profile}}\nLabel: {{label}}\nActions so far: "
      "{{history_len}}\nRound {{round}}: do you rate movies now? Answer "
      "with only the word active or idle.";
  s.reflect_user =
      "Recent viewing actions:\n{{actions}}\n\nSummarize your taste. Answer "
      "with only a JSON object: {\"summary\": \"...\", \"keywords\": "
      "[\"...\"]}";
  s.seed_item_user =
      "Please give me a list of {{count}} different movies with title, genres "
      "and content. Answer with only a bracketed list of records like:\n"
      "[{\"title\": \"...\", \"genres\": \"...\", \"content\": \"...\"}]";
  return s;
}

inline ScenarioSpec make_soc() {
  ScenarioSpec s;
  s.id = "SoC";
  s.actor_noun = "user";
  s.item_noun = "tweet";
  s.action_kinds = {ActionKind::Tweet, ActionKind::Retweet, ActionKind::Reply,
                    ActionKind::Follow};
  s.creation_kind = ActionKind::Tweet;
  s.item_template =
      "Node Feature: Tweets.\n"
      "Tweet ID: {{tweet_id}}\n"
      "User: {{user}}\n"
      "Tweet: {{tweet}}\n"
      "Edge Feature: The tweet history connecting tweets and tweet users.";
  s.required_item_attrs = {"tweet_id", "user", "tweet"};
  s.include_edge_features = false;
  s.topic_attr = "topics";
  s.profile_fields = {"name", "description"};
  s.filter_items = {"follow", "topic", "friend"};
  s.fold_specs = {FoldName::Action, FoldName::Follow, FoldName::Friend};
  s.termination = {Termination::Kind::Rounds, FoldName::Follow, 5};
  s.profiles_per_round = 25;
  s.activation = {ActivationDefaults::Mode::CoreRegular, 25, 0.2};
  s.default_create_probability = 0.6;
  s.default_cite_fraction = 0.3;

  s.profile_system = "You are a user of a microblogging social network.";
  s.profile_user =
      "Please give me a list of {{count}} different twitter users with user "
      "name and user description (interests included). Round {{round}}, "
      "{{existing}} users already exist; make the new ones distinct.\n"
      "Answer with only a bracketed list of records like:\n"
      "[{\"name\": \"...\", \"description\": \"...\", \"topics\": [\"...\"]}]";
  s.query_system = "You are a social network user browsing tweets.";
  s.query_user =
      "User profile:\n{{profile}}\n\nBrowsing memory:\n{{memory}}\n\n"
      "Give up to {{max_queries}} short keywords for tweets you want to see "
      "next. Answer with only a bracketed list of strings.";
  s.action_system =
      "You are a social network user deciding how to engage with tweets.";
  s.action_user =
      "User profile:\n{{profile}}\n\nBrowsing memory:\n{{memory}}\n\n"
      "Environment observation (tweets in your feed):\n{{observation}}\n\n"
      "You can retweet or reply to observed tweets (by exact Tweet ID) and "
      "follow their bloggers; you may also post one new tweet. Answer with "
      "only a JSON object:\n"
      "{\"tweet\": \"... or empty\", \"topics\": [\"...\"], \"actions\": "
      "[{\"type\": \"retweet|reply|follow\", \"target\": \"exact tweet id\"}]}";
  s.activation_user =
      "User profile:\n{{profile}}\nLabel: {{label}}\nActions so far: "
      "{{history_len}}\nRound {{round}}: do you browse the feed now? Answer "
      "with only the word active or idle.";
  s.reflect_user =
      "Recent browsing actions:\n{{actions}}\n\nSummarize your interests. "
      "Answer with only a JSON object: {\"summary\": \"...\", \"keywords\": "
      "[\"...\"]}";
  s.seed_item_user =
      "Please give me a list of {{count}} different tweets with tweet_id, "
      "user and tweet text. Answer with only a bracketed list of records "
      "like:\n"
      "[{\"tweet_id\": \"...\", \"user\": \"...\", \"tweet\": \"...\"}]";
  return s;
}

}  // namespace detail

inline const std::vector<ScenarioSpec>& builtin_scenarios() {
  static const std::vector<ScenarioSpec> all = {
      detail::make_sc(), detail::make_tc(), detail::make_soc()};
  return all;
}

inline const ScenarioSpec& scenario_by_id(std::string_view id) {
  for (const ScenarioSpec& s : builtin_scenarios())
    if (s.id == id) return s;
  throw UnknownScenario(std::string(id));
}

// Scenario-constrained empty graph.
inline BipartiteGraph make_graph(const ScenarioSpec& spec) {
  spec.validate();
  return BipartiteGraph(spec.action_kinds, spec.required_item_attrs);
}

// Text form of an item, used for embeddings, prompts, and carried attrs.
// Pure in (attrs, author_names): identical inputs yield identical text.
inline std::string render_item_text(
    const ItemNode& item, const ScenarioSpec& spec,
    const std::vector<std::string>& author_names = {}) {
  for (const std::string& req : spec.required_item_attrs) {
    if (!item.attrs.has_nonempty(req)) throw MissingRequiredAttr(req);
  }
  std::map<std::string, std::string> slots;
  for (const auto& [k, v] : item.attrs) slots[k] = v;
  std::string text = fill_template(spec.item_template, slots);
  if (spec.include_edge_features && !author_names.empty())
    text += "\nAuthors: " + join(author_names, "; ");
  return text;
}

// Completed-round check. Returns the stop reason once the rule fires.
inline std::optional<std::string> check_termination(const BipartiteGraph& g,
                                                    const ScenarioSpec& spec,
                                                    std::uint32_t rounds_done) {
  const Termination& t = spec.termination;
  switch (t.kind) {
    case Termination::Kind::Rounds:
      if (rounds_done >= t.count)
        return "rounds reached " + std::to_string(t.count);
      break;
    case Termination::Kind::NodesReached: {
      FoldedGraph f = fold(g, fold_spec(t.fold));
      if (f.node_count() >= t.count)
        return std::string(to_string(t.fold)) + " nodes reached " +
               std::to_string(t.count);
      break;
    }
    case Termination::Kind::EdgesReached: {
      FoldedGraph f = fold(g, fold_spec(t.fold));
      if (f.edge_count() >= t.count)
        return std::string(to_string(t.fold)) + " edges reached " +
               std::to_string(t.count);
      break;
    }
  }
  return std::nullopt;
}

}  // namespace gag
