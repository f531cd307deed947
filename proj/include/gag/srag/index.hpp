#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gag/core/graph.hpp"
#include "gag/scenario/scenario.hpp"
#include "gag/srag/embed.hpp"
#include "gag/util/text.hpp"

namespace gag {

// Retrieval knobs of one run. n_f counts fine-ranking filter predicates and
// may not exceed the scenario's filter_items; hub_rate feeds core labeling.
struct SragConfig {
  std::uint32_t n_r = 10;
  std::uint32_t n_f = 0;
  bool rerank_enabled = true;
  double hub_rate = 0.2;
  std::size_t embed_dim = kDefaultEmbedDim;
  std::uint32_t max_queries = 3;

  void validate(const ScenarioSpec& spec) const {
    if (n_r == 0) throw ConfigError("n_r must be >= 1");
    if (n_f > spec.filter_items.size())
      throw ConfigError("n_f " + std::to_string(n_f) + " exceeds the " +
                        std::to_string(spec.filter_items.size()) +
                        " filter items of " + spec.id);
    if (hub_rate < 0.0 || hub_rate > 1.0)
      throw ConfigError("hub_rate must be in [0, 1]");
  }
};

// Frozen per-round retrieval table: one row per snapshot item. texts are the
// rendered item features (also reused for observation prompts); creator_core
// mirrors the creators' labels at index time, seed items counting as regular.
struct VectorIndex {
  std::size_t dim = 0;
  std::vector<std::uint32_t> items;   // item ordinals
  std::vector<float> vectors;         // size() * dim, unit rows
  std::vector<std::string> texts;
  std::vector<std::uint32_t> rounds;  // created_round per entry
  std::vector<char> creator_core;

  std::size_t size() const { return items.size(); }
  const float* row(std::size_t i) const { return vectors.data() + i * dim; }
};

inline VectorIndex index_items(
    const ItemSnapshot& snap, const ScenarioSpec& spec, const Encoder& encoder,
    const std::function<std::string(std::uint32_t)>& actor_name = {}) {
  VectorIndex idx;
  idx.dim = encoder.dim();
  idx.items.reserve(snap.size());
  idx.vectors.reserve(snap.size() * idx.dim);
  idx.texts.reserve(snap.size());
  for (std::uint32_t i = 0; i < snap.size(); ++i) {
    const ItemNode& item = snap.item(i);
    std::vector<std::string> authors;
    if (spec.include_edge_features && spec.creation_kind) {
      for (std::uint32_t a : snap.graph().authors_of(i, *spec.creation_kind))
        authors.push_back(actor_name ? actor_name(a)
                                     : "actor-" + std::to_string(a));
    }
    std::string text = render_item_text(item, spec, authors);
    std::vector<float> v = encoder.encode(text);
    idx.items.push_back(i);
    idx.vectors.insert(idx.vectors.end(), v.begin(), v.end());
    idx.texts.push_back(std::move(text));
    idx.rounds.push_back(item.created_round);
    idx.creator_core.push_back(
        item.creator && snap.graph().actors()[*item.creator].core ? 1 : 0);
  }
  return idx;
}

// One recall hit. pos indexes the VectorIndex row (for text/core lookups),
// item is the bipartite ordinal.
struct ScoredItem {
  std::uint32_t pos = 0;
  std::uint32_t item = 0;
  double sim = 0.0;
};

// Exact top-n_r by cosine, ties broken by ascending item ordinal. Exhaustive
// scan: index sizes stay desk-scale, and approximate structures would break
// the equality oracle.
inline std::vector<ScoredItem> recall(const VectorIndex& idx,
                                      const std::vector<float>& query,
                                      std::uint32_t n_r) {
  if (n_r == 0) return {};
  std::vector<ScoredItem> all(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    all[i] = {static_cast<std::uint32_t>(i), idx.items[i],
              unit_cosine(idx.row(i), query.data(), idx.dim)};
  std::size_t n = std::min<std::size_t>(n_r, all.size());
  std::partial_sort(all.begin(), all.begin() + n, all.end(),
                    [](const ScoredItem& a, const ScoredItem& b) {
                      if (a.sim != b.sim) return a.sim > b.sim;
                      return a.item < b.item;
                    });
  all.resize(n);
  return all;
}

inline std::vector<ScoredItem> recall(const VectorIndex& idx,
                                      const Encoder& encoder,
                                      std::string_view query_text,
                                      std::uint32_t n_r) {
  return recall(idx, encoder.encode(query_text), n_r);
}

// Stable partition: core-creator items first, everything else after, both in
// original relative order. Returns the core block size.
inline std::size_t rerank_coarse(std::vector<ScoredItem>& results,
                                 const std::vector<char>& creator_core) {
  auto mid = std::stable_partition(
      results.begin(), results.end(),
      [&creator_core](const ScoredItem& s) { return creator_core[s.pos] != 0; });
  return static_cast<std::size_t>(mid - results.begin());
}

// Inputs of the fine-ranking predicates. followed/friends are sorted creator
// ordinals (SoC); scenarios without those filters leave them null.
struct FineContext {
  const ScenarioSpec* spec = nullptr;
  const ItemSnapshot* snap = nullptr;
  const std::vector<std::string>* topics = nullptr;
  const std::vector<std::uint32_t>* followed = nullptr;
  const std::vector<std::uint32_t>* friends = nullptr;
};

namespace detail {

inline bool topic_match(const FineContext& ctx, const ItemNode& item) {
  if (!ctx.topics || ctx.topics->empty()) return false;
  std::string value = item.attrs.get_or(ctx.spec->topic_attr);
  if (value.empty()) {
    for (const auto& [k, v] : item.attrs) value += v + " ";
  }
  std::vector<std::string> parts;
  for (char sep : {';', ',', '|'}) {
    if (value.find(sep) != std::string::npos) {
      for (const std::string& p : split(value, sep))
        parts.push_back(normalized_key(p));
      break;
    }
  }
  if (parts.empty()) parts.push_back(normalized_key(value));
  for (const std::string& t : *ctx.topics) {
    std::string key = normalized_key(t);
    if (std::find(parts.begin(), parts.end(), key) != parts.end()) return true;
    if (contains_ci(value, t)) return true;
  }
  return false;
}

inline bool creator_in(const std::vector<std::uint32_t>* set,
                       const ItemNode& item) {
  if (!set || !item.creator) return false;
  return std::binary_search(set->begin(), set->end(), *item.creator);
}

}  // namespace detail

// Count of the first n_f filter predicates the item satisfies.
inline std::uint32_t fine_score(const FineContext& ctx, std::uint32_t item,
                                std::uint32_t n_f) {
  const ItemNode& node = ctx.snap->item(item);
  std::uint32_t score = 0;
  std::uint32_t applied = 0;
  for (const std::string& filter : ctx.spec->filter_items) {
    if (applied >= n_f) break;
    ++applied;
    bool hit = false;
    if (filter == "topic" || filter == "genre") {
      hit = detail::topic_match(ctx, node);
    } else if (filter == "follow") {
      hit = detail::creator_in(ctx.followed, node);
    } else if (filter == "friend") {
      hit = detail::creator_in(ctx.friends, node);
    } else {
      throw ConfigError("unknown filter item: " + filter);
    }
    if (hit) ++score;
  }
  return score;
}

// Stable descending-score sort of [begin, end). Callers apply it per coarse
// block so preference never crosses the core/regular boundary.
inline void rerank_fine(std::vector<ScoredItem>& results, std::size_t begin,
                        std::size_t end, const FineContext& ctx,
                        std::uint32_t n_f) {
  if (n_f == 0 || begin >= end) return;
  std::vector<std::uint32_t> scores(results.size(), 0);
  for (std::size_t i = begin; i < end; ++i)
    scores[i] = fine_score(ctx, results[i].item, n_f);
  std::vector<std::size_t> order(end - begin);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = begin + i;
  std::stable_sort(order.begin(), order.end(),
                   [&scores](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  std::vector<ScoredItem> tmp(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) tmp[i] = results[order[i]];
  std::copy(tmp.begin(), tmp.end(), results.begin() + begin);
}

inline void rerank_fine(std::vector<ScoredItem>& results,
                        const FineContext& ctx, std::uint32_t n_f) {
  rerank_fine(results, 0, results.size(), ctx, n_f);
}

// Per-query ranked lists plus their order-preserving, first-seen-dedup union.
struct Observation {
  std::vector<std::vector<ScoredItem>> per_query;
  std::vector<std::uint32_t> unified;      // item ordinals
  std::vector<std::uint32_t> unified_pos;  // index rows, aligned with unified
};

inline Observation assemble_observation(
    std::vector<std::vector<ScoredItem>> per_query) {
  Observation obs;
  obs.per_query = std::move(per_query);
  std::vector<std::uint32_t> seen;
  for (const std::vector<ScoredItem>& list : obs.per_query) {
    for (const ScoredItem& s : list) {
      if (std::find(seen.begin(), seen.end(), s.item) != seen.end()) continue;
      seen.push_back(s.item);
      obs.unified.push_back(s.item);
      obs.unified_pos.push_back(s.pos);
    }
  }
  return obs;
}

}  // namespace gag
