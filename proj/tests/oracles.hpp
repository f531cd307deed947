#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is written as plain exhaustive enumeration, deliberately
// ignoring the indexes and groupings the library uses, so a bug in one side
// cannot hide in the other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gag/core/fold.hpp"
#include "gag/core/graph.hpp"
#include "gag/core/types.hpp"
#include "gag/util/rng.hpp"

namespace oracle {

using gag::ActionKind;
using gag::BipartiteGraph;
using gag::FoldName;
using gag::NodeId;

using EdgeSet = std::set<std::pair<NodeId, NodeId>>;

inline std::pair<NodeId, NodeId> canon(NodeId a, NodeId b, bool directed) {
  if (!directed && b < a) std::swap(a, b);
  return {a, b};
}

// Authorship by definition: any Creation-kind edge, or the creator field.
inline std::set<std::uint32_t> authors(const BipartiteGraph& g,
                                       std::uint32_t item,
                                       ActionKind creation_kind) {
  std::set<std::uint32_t> out;
  for (const gag::TypedEdge& e : g.edges())
    if (e.item == item && e.kind == creation_kind) out.insert(e.actor);
  if (g.items()[item].creator) out.insert(*g.items()[item].creator);
  return out;
}

inline EdgeSet fold_edges(const BipartiteGraph& g, FoldName name) {
  EdgeSet out;
  const auto& edges = g.edges();
  auto add = [&out](NodeId a, NodeId b, bool directed) {
    if (a == b) return;
    out.insert(canon(a, b, directed));
  };

  switch (name) {
    case FoldName::PaperCitation:
      // (a creates p in round k) and (a cites q in round k) => p -> q.
      for (const auto& e1 : edges)
        for (const auto& e2 : edges)
          if (e1.kind == ActionKind::Creation &&
              e2.kind == ActionKind::Citation && e1.actor == e2.actor &&
              e1.round == e2.round)
            add(gag::item_id(e1.item), gag::item_id(e2.item), true);
      break;
    case FoldName::BibCoupling: {
      EdgeSet pc = fold_edges(g, FoldName::PaperCitation);
      for (const auto& [p1, r1] : pc)
        for (const auto& [p2, r2] : pc)
          if (r1 == r2 && p1 != p2) add(p1, p2, false);
      break;
    }
    case FoldName::CoCitation: {
      EdgeSet pc = fold_edges(g, FoldName::PaperCitation);
      for (const auto& [p1, q1] : pc)
        for (const auto& [p2, q2] : pc)
          if (p1 == p2 && q1 != q2) add(q1, q2, false);
      break;
    }
    case FoldName::AuthorCitation:
      for (const auto& e : edges)
        if (e.kind == ActionKind::Citation)
          for (std::uint32_t b : authors(g, e.item, ActionKind::Creation))
            add(gag::actor_id(e.actor), gag::actor_id(b), true);
      break;
    case FoldName::CoAuthorship:
      for (std::uint32_t i = 0; i < g.items().size(); ++i) {
        auto as = authors(g, i, ActionKind::Creation);
        for (std::uint32_t a : as)
          for (std::uint32_t b : as)
            if (a != b) add(gag::actor_id(a), gag::actor_id(b), false);
      }
      break;
    case FoldName::MovieRating:
      for (const auto& e : edges)
        if (e.kind == ActionKind::Rating)
          add(gag::actor_id(e.actor), gag::item_id(e.item), false);
      break;
    case FoldName::UserProjection:
      for (const auto& e1 : edges)
        for (const auto& e2 : edges)
          if (e1.kind == ActionKind::Rating && e2.kind == ActionKind::Rating &&
              e1.item == e2.item && e1.actor != e2.actor)
            add(gag::actor_id(e1.actor), gag::actor_id(e2.actor), false);
      break;
    case FoldName::Action:
      for (const auto& e : edges)
        if (e.kind == ActionKind::Retweet || e.kind == ActionKind::Reply ||
            e.kind == ActionKind::Follow)
          for (std::uint32_t b : authors(g, e.item, ActionKind::Tweet))
            add(gag::actor_id(e.actor), gag::actor_id(b), false);
      break;
    case FoldName::Follow:
      for (const auto& e : edges)
        if (e.kind == ActionKind::Follow)
          for (std::uint32_t b : authors(g, e.item, ActionKind::Tweet))
            add(gag::actor_id(e.actor), gag::actor_id(b), true);
      break;
    case FoldName::Friend: {
      EdgeSet fo = fold_edges(g, FoldName::Follow);
      for (const auto& [a, b] : fo)
        if (fo.count({b, a})) add(a, b, false);
      break;
    }
  }
  return out;
}

inline EdgeSet folded_as_set(const gag::FoldedGraph& f) {
  EdgeSet out;
  for (auto [s, t] : f.edges)
    out.insert(canon(f.nodes[s], f.nodes[t], f.directed));
  return out;
}

// Random bipartite instance over the full action vocabulary. Node total is
// capped by `max_nodes`; rounds vary so interaction grouping is exercised.
inline BipartiteGraph random_instance(gag::Rng& rng, std::uint32_t max_nodes,
                                      std::uint32_t max_edges) {
  std::uint32_t na = 2 + static_cast<std::uint32_t>(rng.below(max_nodes / 2));
  std::uint32_t ni =
      2 + static_cast<std::uint32_t>(rng.below(max_nodes - na - 1));
  BipartiteGraph g;  // permissive: all kinds, no required attrs
  for (std::uint32_t a = 0; a < na; ++a)
    g.add_actor("actor " + std::to_string(a), 0);
  for (std::uint32_t i = 0; i < ni; ++i) {
    std::optional<std::uint32_t> creator;
    if (rng.bernoulli(0.6))
      creator = static_cast<std::uint32_t>(rng.below(na));
    gag::AttrMap attrs;
    attrs.set("title", "item " + std::to_string(i));
    g.add_item(attrs, creator, 0);
  }
  std::uint32_t m = static_cast<std::uint32_t>(rng.below(max_edges + 1));
  for (std::uint32_t e = 0; e < m; ++e) {
    g.add_edge(static_cast<std::uint32_t>(rng.below(na)),
               static_cast<std::uint32_t>(rng.below(ni)),
               static_cast<ActionKind>(rng.below(gag::kActionKindCount)),
               static_cast<std::uint32_t>(rng.below(4)));
  }
  return g;
}

}  // namespace oracle
