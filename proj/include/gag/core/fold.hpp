#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gag/core/graph.hpp"
#include "gag/core/types.hpp"

namespace gag {

// Pattern shapes behind the ten folds. Each rule is data; fold() dispatches.
enum class FoldRule : std::uint8_t {
  BipartiteCopy,    // actor-item edges of `via` kinds, verbatim
  ActorToAuthors,   // actor with a `via` edge -> authors of the target item
  CoIncidence,      // two actors with a `via` edge on the same item
  CoAuthors,        // two actors authoring the same item
  CreationCitePair, // item created and item cited in the same interaction
  CommonTarget,     // two items citing a common item (via base fold)
  CommonSource,     // two items cited by a common item (via base fold)
  MutualBase,       // mutual pairs of the directed base fold
};

struct FoldSpec {
  FoldName name = FoldName::PaperCitation;
  NodeKind node_kind = NodeKind::Item;
  bool directed = false;
  FoldRule rule = FoldRule::BipartiteCopy;
  std::vector<ActionKind> via;                    // edge kinds matched 1-hop
  ActionKind creation_kind = ActionKind::Creation; // authorship evidence
  FoldName base = FoldName::PaperCitation;        // for 2-hop-over-fold rules
};

// Canonical rule table. An interaction is identified by (actor, round):
// an actor is dispatched at most once per round, so edges sharing both
// belong to the same interaction.
inline FoldSpec fold_spec(FoldName name) {
  using AK = ActionKind;
  FoldSpec s;
  s.name = name;
  switch (name) {
    case FoldName::PaperCitation:
      s.node_kind = NodeKind::Item;
      s.directed = true;
      s.rule = FoldRule::CreationCitePair;
      s.via = {AK::Citation};
      s.creation_kind = AK::Creation;
      break;
    case FoldName::BibCoupling:
      s.node_kind = NodeKind::Item;
      s.directed = false;
      s.rule = FoldRule::CommonTarget;
      s.base = FoldName::PaperCitation;
      break;
    case FoldName::CoCitation:
      s.node_kind = NodeKind::Item;
      s.directed = false;
      s.rule = FoldRule::CommonSource;
      s.base = FoldName::PaperCitation;
      break;
    case FoldName::AuthorCitation:
      s.node_kind = NodeKind::Actor;
      s.directed = true;
      s.rule = FoldRule::ActorToAuthors;
      s.via = {AK::Citation};
      s.creation_kind = AK::Creation;
      break;
    case FoldName::CoAuthorship:
      s.node_kind = NodeKind::Actor;
      s.directed = false;
      s.rule = FoldRule::CoAuthors;
      s.creation_kind = AK::Creation;
      break;
    case FoldName::MovieRating:
      s.node_kind = NodeKind::Both;
      s.directed = false;
      s.rule = FoldRule::BipartiteCopy;
      s.via = {AK::Rating};
      break;
    case FoldName::UserProjection:
      s.node_kind = NodeKind::Actor;
      s.directed = false;
      s.rule = FoldRule::CoIncidence;
      s.via = {AK::Rating};
      break;
    case FoldName::Action:
      s.node_kind = NodeKind::Actor;
      s.directed = false;
      s.rule = FoldRule::ActorToAuthors;
      s.via = {AK::Retweet, AK::Reply, AK::Follow};
      s.creation_kind = AK::Tweet;
      break;
    case FoldName::Follow:
      s.node_kind = NodeKind::Actor;
      s.directed = true;
      s.rule = FoldRule::ActorToAuthors;
      s.via = {AK::Follow};
      s.creation_kind = AK::Tweet;
      break;
    case FoldName::Friend:
      s.node_kind = NodeKind::Actor;
      s.directed = false;
      s.rule = FoldRule::MutualBase;
      s.base = FoldName::Follow;
      break;
  }
  return s;
}

// Simple projected graph. Nodes keep their bipartite identity; edges are
// index pairs into `nodes`. Deduplicated, loop-free, canonically ordered:
// nodes ascending by (kind, ordinal), edges ascending by (src, dst).
struct FoldedGraph {
  std::string name;
  NodeKind node_kind = NodeKind::Item;
  bool directed = false;
  std::vector<NodeId> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::string> attrs;  // per-node text carried over

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }
};

namespace detail {

using RawEdge = std::pair<NodeId, NodeId>;

inline void append_actor_to_authors(const BipartiteGraph& g,
                                    const FoldSpec& spec,
                                    std::vector<RawEdge>& out) {
  for (ActionKind k : spec.via) {
    for (std::uint32_t e : g.edges_of_kind(k)) {
      const TypedEdge& edge = g.edges()[e];
      for (std::uint32_t author : g.authors_of(edge.item, spec.creation_kind))
        out.emplace_back(actor_id(edge.actor), actor_id(author));
    }
  }
}

inline void append_co_incidence(const BipartiteGraph& g, const FoldSpec& spec,
                                std::vector<RawEdge>& out) {
  for (std::uint32_t item = 0; item < g.items().size(); ++item) {
    std::vector<std::uint32_t> actors;
    for (std::uint32_t e : g.edges_of_item(item)) {
      const TypedEdge& edge = g.edges()[e];
      for (ActionKind k : spec.via) {
        if (edge.kind == k) {
          actors.push_back(edge.actor);
          break;
        }
      }
    }
    std::sort(actors.begin(), actors.end());
    actors.erase(std::unique(actors.begin(), actors.end()), actors.end());
    for (std::size_t i = 0; i < actors.size(); ++i)
      for (std::size_t j = i + 1; j < actors.size(); ++j)
        out.emplace_back(actor_id(actors[i]), actor_id(actors[j]));
  }
}

inline void append_co_authors(const BipartiteGraph& g, const FoldSpec& spec,
                              std::vector<RawEdge>& out) {
  for (std::uint32_t item = 0; item < g.items().size(); ++item) {
    std::vector<std::uint32_t> authors = g.authors_of(item, spec.creation_kind);
    for (std::size_t i = 0; i < authors.size(); ++i)
      for (std::size_t j = i + 1; j < authors.size(); ++j)
        out.emplace_back(actor_id(authors[i]), actor_id(authors[j]));
  }
}

inline void append_creation_cite_pairs(const BipartiteGraph& g,
                                       const FoldSpec& spec,
                                       std::vector<RawEdge>& out) {
  // Group edges by interaction (actor, round).
  std::map<std::pair<std::uint32_t, std::uint32_t>,
           std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
      per_interaction;
  for (const TypedEdge& e : g.edges()) {
    auto key = std::make_pair(e.actor, e.round);
    if (e.kind == spec.creation_kind) {
      per_interaction[key].first.push_back(e.item);
    } else {
      for (ActionKind k : spec.via) {
        if (e.kind == k) {
          per_interaction[key].second.push_back(e.item);
          break;
        }
      }
    }
  }
  for (const auto& [key, lists] : per_interaction)
    for (std::uint32_t created : lists.first)
      for (std::uint32_t cited : lists.second)
        out.emplace_back(item_id(created), item_id(cited));
}

}  // namespace detail

inline FoldedGraph fold(const BipartiteGraph& g, const FoldSpec& spec);

namespace detail {

inline void append_over_base(const BipartiteGraph& g, const FoldSpec& spec,
                             std::vector<RawEdge>& out) {
  FoldedGraph base = fold(g, fold_spec(spec.base));
  if (spec.rule == FoldRule::MutualBase) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> set(base.edges);
    std::sort(set.begin(), set.end());
    for (auto [s, d] : base.edges) {
      if (s < d && std::binary_search(set.begin(), set.end(),
                                      std::make_pair(d, s)))
        out.emplace_back(base.nodes[s], base.nodes[d]);
    }
    return;
  }
  // CommonTarget: group by dst, pair up srcs; CommonSource: the reverse.
  bool by_target = spec.rule == FoldRule::CommonTarget;
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (auto [s, d] : base.edges)
    groups[by_target ? d : s].push_back(by_target ? s : d);
  for (auto& [pivot, members] : groups) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        out.emplace_back(base.nodes[members[i]], base.nodes[members[j]]);
  }
}

}  // namespace detail

inline FoldedGraph fold(const BipartiteGraph& g, const FoldSpec& spec) {
  for (ActionKind k : spec.via) {
    if (!g.kind_allowed(k))
      throw SpecScenarioMismatch(std::string(to_string(spec.name)) +
                                 " needs edge kind " +
                                 std::string(to_string(k)));
  }

  std::vector<detail::RawEdge> raw;
  switch (spec.rule) {
    case FoldRule::BipartiteCopy:
      for (ActionKind k : spec.via)
        for (std::uint32_t e : g.edges_of_kind(k))
          raw.emplace_back(actor_id(g.edges()[e].actor),
                           item_id(g.edges()[e].item));
      break;
    case FoldRule::ActorToAuthors:
      detail::append_actor_to_authors(g, spec, raw);
      break;
    case FoldRule::CoIncidence:
      detail::append_co_incidence(g, spec, raw);
      break;
    case FoldRule::CoAuthors:
      detail::append_co_authors(g, spec, raw);
      break;
    case FoldRule::CreationCitePair:
      detail::append_creation_cite_pairs(g, spec, raw);
      break;
    case FoldRule::CommonTarget:
    case FoldRule::CommonSource:
    case FoldRule::MutualBase:
      detail::append_over_base(g, spec, raw);
      break;
  }

  // Canonicalize: no self-loops, undirected edges stored (min, max), dedup.
  std::vector<detail::RawEdge> clean;
  clean.reserve(raw.size());
  for (auto& [a, b] : raw) {
    if (a == b) continue;
    if (!spec.directed && b < a) std::swap(a, b);
    clean.emplace_back(a, b);
  }
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

  FoldedGraph out;
  out.name = std::string(to_string(spec.name));
  out.node_kind = spec.node_kind;
  out.directed = spec.directed;

  std::vector<NodeId> nodes;
  nodes.reserve(clean.size() * 2);
  for (const auto& [a, b] : clean) {
    nodes.push_back(a);
    nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  out.nodes = std::move(nodes);

  auto index_of = [&out](NodeId id) {
    auto it = std::lower_bound(out.nodes.begin(), out.nodes.end(), id);
    return static_cast<std::uint32_t>(it - out.nodes.begin());
  };
  out.edges.reserve(clean.size());
  for (const auto& [a, b] : clean) out.edges.emplace_back(index_of(a), index_of(b));

  out.attrs.reserve(out.nodes.size());
  for (NodeId id : out.nodes) {
    if (id.kind == NodeKind::Actor) {
      out.attrs.push_back(g.actors()[id.ordinal].profile_text);
    } else {
      std::string joined;
      for (const auto& [k, v] : g.items()[id.ordinal].attrs) {
        if (!joined.empty()) joined += "\n";
        joined += k + ": " + v;
      }
      out.attrs.push_back(std::move(joined));
    }
  }
  return out;
}

// Degree sequences of a folded graph. Undirected graphs fill `total` only;
// directed graphs fill all three (total = in + out).
struct Degrees {
  std::vector<std::uint32_t> total;
  std::vector<std::uint32_t> in;
  std::vector<std::uint32_t> out;
};

inline Degrees degrees(const FoldedGraph& g) {
  Degrees d;
  d.total.assign(g.nodes.size(), 0);
  if (g.directed) {
    d.in.assign(g.nodes.size(), 0);
    d.out.assign(g.nodes.size(), 0);
  }
  for (auto [s, t] : g.edges) {
    d.total[s] += 1;
    d.total[t] += 1;
    if (g.directed) {
      d.out[s] += 1;
      d.in[t] += 1;
    }
  }
  return d;
}

}  // namespace gag
