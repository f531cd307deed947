#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gag/core/types.hpp"

namespace gag {

// Insertion-ordered string map. Item attribute order is part of the rendered
// text and of the persisted form, so a sorted map would not do.
class AttrMap {
 public:
  AttrMap() = default;
  AttrMap(std::initializer_list<std::pair<std::string, std::string>> init)
      : kv_(init.begin(), init.end()) {}

  void set(std::string key, std::string value) {
    for (auto& [k, v] : kv_) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    kv_.emplace_back(std::move(key), std::move(value));
  }

  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : kv_) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  std::string get_or(std::string_view key, std::string fallback = "") const {
    const std::string* v = find(key);
    return v ? *v : fallback;
  }

  bool has_nonempty(std::string_view key) const {
    const std::string* v = find(key);
    return v != nullptr && !v->empty();
  }

  auto begin() const { return kv_.begin(); }
  auto end() const { return kv_.end(); }
  std::size_t size() const { return kv_.size(); }
  bool empty() const { return kv_.empty(); }

  friend bool operator==(const AttrMap&, const AttrMap&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

struct ActorNode {
  std::uint32_t ordinal = 0;
  std::string profile_text;
  bool core = false;
  std::uint32_t created_round = 0;
};

struct ItemNode {
  std::uint32_t ordinal = 0;
  AttrMap attrs;
  std::optional<std::uint32_t> creator;  // actor ordinal
  std::uint32_t created_round = 0;
};

struct TypedEdge {
  std::uint32_t actor = 0;
  std::uint32_t item = 0;
  ActionKind kind = ActionKind::Creation;
  std::uint32_t round = 0;
};

class ItemSnapshot;

// Actor-item multigraph grown round by round. Mutation is only legal on the
// coordinating thread; workers operate on ItemSnapshot views. Ordinals are
// dense per node kind and stable, and created_round is non-decreasing in
// ordinal so a round snapshot is a prefix of the item vector.
class BipartiteGraph {
 public:
  BipartiteGraph() : allowed_(kActionKindCount, true) {}

  BipartiteGraph(std::vector<ActionKind> allowed_kinds,
                 std::vector<std::string> required_item_attrs)
      : allowed_(kActionKindCount, false),
        required_item_attrs_(std::move(required_item_attrs)) {
    for (ActionKind k : allowed_kinds) allowed_[static_cast<int>(k)] = true;
  }

  std::uint32_t add_actor(std::string profile_text, std::uint32_t round,
                          bool core = false) {
    if (!actors_.empty() && round < actors_.back().created_round)
      throw Error("actor rounds must be non-decreasing");
    std::uint32_t ord = static_cast<std::uint32_t>(actors_.size());
    actors_.push_back({ord, std::move(profile_text), core, round});
    actor_edges_.emplace_back();
    if (round > current_round_) current_round_ = round;
    return ord;
  }

  std::uint32_t add_item(AttrMap attrs, std::optional<std::uint32_t> creator,
                         std::uint32_t round) {
    for (const std::string& req : required_item_attrs_) {
      if (!attrs.has_nonempty(req))
        throw MissingRequiredAttr(req);
    }
    if (creator && *creator >= actors_.size())
      throw DanglingEndpoint("item creator " + std::to_string(*creator));
    if (!items_.empty() && round < items_.back().created_round)
      throw Error("item rounds must be non-decreasing");
    std::uint32_t ord = static_cast<std::uint32_t>(items_.size());
    items_.push_back({ord, std::move(attrs), creator, round});
    item_edges_.emplace_back();
    if (round > current_round_) current_round_ = round;
    return ord;
  }

  // Multi-edges are kept verbatim; deduplication happens at fold time.
  std::uint32_t add_edge(std::uint32_t actor, std::uint32_t item,
                         ActionKind kind, std::uint32_t round) {
    if (!allowed_[static_cast<int>(kind)])
      throw UnknownActionKind(std::string(to_string(kind)) +
                              " not allowed in this scenario");
    if (actor >= actors_.size())
      throw DanglingEndpoint("actor " + std::to_string(actor));
    if (item >= items_.size())
      throw DanglingEndpoint("item " + std::to_string(item));
    std::uint32_t idx = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({actor, item, kind, round});
    actor_edges_[actor].push_back(idx);
    item_edges_[item].push_back(idx);
    kind_edges_[static_cast<int>(kind)].push_back(idx);
    if (round > current_round_) current_round_ = round;
    return idx;
  }

  void set_core(std::uint32_t actor, bool core) {
    actors_.at(actor).core = core;
  }

  const std::vector<ActorNode>& actors() const { return actors_; }
  const std::vector<ItemNode>& items() const { return items_; }
  const std::vector<TypedEdge>& edges() const { return edges_; }
  std::uint32_t current_round() const { return current_round_; }

  const std::vector<std::uint32_t>& edges_of_actor(std::uint32_t a) const {
    return actor_edges_.at(a);
  }
  const std::vector<std::uint32_t>& edges_of_item(std::uint32_t i) const {
    return item_edges_.at(i);
  }
  const std::vector<std::uint32_t>& edges_of_kind(ActionKind k) const {
    return kind_edges_[static_cast<int>(k)];
  }

  bool kind_allowed(ActionKind k) const { return allowed_[static_cast<int>(k)]; }
  const std::vector<std::string>& required_item_attrs() const {
    return required_item_attrs_;
  }

  // Items visible to round k: everything created in rounds < k.
  ItemSnapshot snapshot(std::uint32_t round) const;

  // Actors with a Creation-kind edge to the item, plus its creator field.
  // Ascending, deduplicated. Creator-less items yield an empty set.
  std::vector<std::uint32_t> authors_of(std::uint32_t item,
                                        ActionKind creation_kind) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t e : item_edges_.at(item)) {
      if (edges_[e].kind == creation_kind) out.push_back(edges_[e].actor);
    }
    if (items_[item].creator) out.push_back(*items_[item].creator);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::vector<ActorNode> actors_;
  std::vector<ItemNode> items_;
  std::vector<TypedEdge> edges_;
  std::vector<std::vector<std::uint32_t>> actor_edges_;
  std::vector<std::vector<std::uint32_t>> item_edges_;
  std::vector<std::uint32_t> kind_edges_[kActionKindCount];
  std::vector<bool> allowed_;
  std::vector<std::string> required_item_attrs_;
  std::uint32_t current_round_ = 0;
};

// Immutable prefix view of the item set as of the start of a round.
class ItemSnapshot {
 public:
  ItemSnapshot(const BipartiteGraph& g, std::uint32_t item_count,
               std::uint32_t round)
      : graph_(&g), count_(item_count), round_(round) {}

  std::uint32_t size() const { return count_; }
  std::uint32_t round() const { return round_; }
  const ItemNode& item(std::uint32_t ordinal) const {
    return graph_->items()[ordinal];
  }
  const BipartiteGraph& graph() const { return *graph_; }

 private:
  const BipartiteGraph* graph_;
  std::uint32_t count_;
  std::uint32_t round_;
};

inline ItemSnapshot BipartiteGraph::snapshot(std::uint32_t round) const {
  // created_round is non-decreasing in ordinal (enforced by add_item).
  auto it = std::partition_point(
      items_.begin(), items_.end(),
      [round](const ItemNode& n) { return n.created_round < round; });
  return ItemSnapshot(*this, static_cast<std::uint32_t>(it - items_.begin()),
                      round);
}

}  // namespace gag
