#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gag/agent/profile.hpp"
#include "gag/agent/vocab.hpp"
#include "gag/core/graph.hpp"
#include "gag/core/io.hpp"
#include "gag/llm/llm_policy.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/srag/round.hpp"
#include "gag/util/rng.hpp"

namespace gag {

// Where the round-0 graph comes from: fabricated from the vocabulary,
// asked of the chat backend, or loaded from a nodes.jsonl/edges.tsv pair.
struct SeedSpec {
  std::string source = "synthetic";  // synthetic | llm-generated | <dir path>
  std::uint32_t actors = 10;
  std::uint32_t items = 50;
  std::uint32_t edges = 80;
};

struct SeedResult {
  BipartiteGraph graph;
  std::vector<AgentProfile> profiles;  // one per seeded actor
};

namespace detail {

inline AttrMap synth_seed_item(const ScenarioSpec& spec, const Vocabulary& v,
                               std::uint32_t i, Rng& rng) {
  AttrMap attrs;
  if (spec.id == "SC") {
    std::string t1 = pick(v.topics, rng), t2 = pick(v.topics, rng);
    attrs.set("title", capitalize(t1) + " and " + t2 + ": foundations (s" +
                           std::to_string(i) + ")");
    attrs.set("topic", t1);
    attrs.set("abstract",
              "Foundational results on " + t1 + " connected to " + t2 + ".");
  } else if (spec.id == "TC") {
    std::vector<std::string> genres = pick_distinct(v.genres, 2, rng);
    attrs.set("title", "The " + pick(v.adjectives, rng) + " " +
                           pick(v.nouns, rng) + " (s" + std::to_string(i) +
                           ")");
    attrs.set("genres", join(genres, "; "));
    attrs.set("content", "A " + to_lower(genres[0]) + " tale of " +
                             to_lower(pick(v.nouns, rng)) + ".");
  } else if (spec.id == "SoC") {
    std::vector<std::string> topics = pick_distinct(v.topics, 2, rng);
    attrs.set("tweet_id", "t.seed." + std::to_string(i));
    attrs.set("user",
              pick(v.first_names, rng) + " " + pick(v.last_names, rng));
    attrs.set("tweet",
              "Talking about " + topics[0] + " and " + topics[1] + " today.");
    attrs.set("topics", join(topics, "; "));
  } else {
    for (const std::string& name : spec.required_item_attrs)
      attrs.set(name, name + " " + std::to_string(i));
  }
  return attrs;
}

// Uniform (actor, item, non-creation kind) triples; a multigraph, so
// repeats are allowed and the count is exact.
inline void add_seed_edges(BipartiteGraph& g, const ScenarioSpec& spec,
                           std::uint32_t edges, Rng& rng) {
  if (edges == 0) return;
  std::vector<ActionKind> kinds = spec.non_creation_kinds();
  if (g.actors().empty() || g.items().empty() || kinds.empty())
    throw BadSeedSpec("seed edges need actors, items and a non-creation kind");
  for (std::uint32_t e = 0; e < edges; ++e) {
    std::uint32_t a = static_cast<std::uint32_t>(rng.below(g.actors().size()));
    std::uint32_t i = static_cast<std::uint32_t>(rng.below(g.items().size()));
    g.add_edge(a, i, kinds[rng.below(kinds.size())], 0);
  }
}

// Rebuild a loaded graph with every round stamped 0 so it can serve as the
// starting snapshot regardless of when it was grown.
inline BipartiteGraph coerce_round_zero(const BipartiteGraph& in,
                                        const ScenarioSpec& spec) {
  BipartiteGraph g = make_graph(spec);
  for (const ActorNode& a : in.actors()) {
    g.add_actor(a.profile_text, 0);
    if (a.core) g.set_core(a.ordinal, true);
  }
  for (const ItemNode& it : in.items()) g.add_item(it.attrs, it.creator, 0);
  for (const TypedEdge& e : in.edges()) g.add_edge(e.actor, e.item, e.kind, 0);
  return g;
}

}  // namespace detail

// Builds the round-0 state. Seed items carry no creator, so authorship-based
// projections skip them until simulated actors start creating.
inline SeedResult load_seed(const ScenarioSpec& spec, const SeedSpec& seed,
                            const Vocabulary& vocab, std::uint64_t rng_seed,
                            Backend* backend = nullptr) {
  SeedResult out{make_graph(spec), {}};
  Rng rng = derive_rng(rng_seed, 0, 0, stream::kSeedGraph);

  if (seed.source == "synthetic") {
    out.profiles = generate_profiles(vocab, spec, seed.actors, rng);
    for (const AgentProfile& p : out.profiles)
      out.graph.add_actor(render_profile_text(p, spec), 0);
    for (std::uint32_t i = 0; i < seed.items; ++i)
      out.graph.add_item(detail::synth_seed_item(spec, vocab, i, rng),
                         std::nullopt, 0);
    detail::add_seed_edges(out.graph, spec, seed.edges, rng);
    return out;
  }

  if (seed.source == "llm-generated") {
    if (!backend)
      throw BadSeedSpec("llm-generated seed needs a chat backend");
    out.profiles =
        generate_profiles_llm(*backend, spec, seed.actors, 0, 0);
    for (const AgentProfile& p : out.profiles)
      out.graph.add_actor(render_profile_text(p, spec), 0);
    for (AttrMap& attrs : generate_seed_items_llm(*backend, spec, seed.items))
      out.graph.add_item(std::move(attrs), std::nullopt, 0);
    detail::add_seed_edges(out.graph, spec, seed.edges, rng);
    return out;
  }

  // Anything else is a directory holding nodes.jsonl + edges.tsv.
  out.graph = detail::coerce_round_zero(load_graph(seed.source, make_graph(spec)), spec);
  out.profiles.reserve(out.graph.actors().size());
  for (const ActorNode& a : out.graph.actors())
    out.profiles.push_back(parse_profile_text(a.profile_text, spec));
  return out;
}

}  // namespace gag
