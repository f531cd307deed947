#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gag/core/fold.hpp"
#include "gag/core/types.hpp"
#include "gag/metrics/structure.hpp"
#include "gag/util/rng.hpp"

namespace gag {

enum class BaselineKind : std::uint8_t { ER, BA, WS };

constexpr std::string_view to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::ER: return "ER";
    case BaselineKind::BA: return "BA";
    case BaselineKind::WS: return "WS";
  }
  return "?";
}

inline BaselineKind baseline_kind_from(std::string_view s) {
  if (s == "ER") return BaselineKind::ER;
  if (s == "BA") return BaselineKind::BA;
  if (s == "WS") return BaselineKind::WS;
  throw ParseError("unknown baseline kind: " + std::string(s));
}

// Derived parameters: ER edge probability p = kbar/(n-1); BA attachment
// count m = round(kbar/2), at least 1; WS ring degree = kbar*2 (each node
// starts with round(kbar) neighbors per side).
struct BaselineSpec {
  BaselineKind kind = BaselineKind::ER;
  std::uint32_t n = 0;
  double kbar = 0.0;
  double p_rewire = 0.1;  // WS only
  std::uint64_t seed = 0;
};

namespace detail {

inline FoldedGraph edges_to_folded(BaselineKind kind, std::uint32_t n,
                                   std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  FoldedGraph g;
  g.name = std::string(to_string(kind));
  g.node_kind = NodeKind::Actor;
  g.directed = false;
  g.nodes.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) g.nodes.push_back(actor_id(v));
  g.edges = std::move(edges);
  g.attrs.assign(n, "");
  return g;
}

// G(n, p) by geometric jumps over the ordered pair sequence: O(|E|) draws.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> er_edges(
    std::uint32_t n, double p, Rng& rng) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  if (p <= 0.0 || n < 2) return edges;
  if (p >= 1.0) {
    for (std::uint32_t v = 1; v < n; ++v)
      for (std::uint32_t w = 0; w < v; ++w) edges.emplace_back(w, v);
    return edges;
  }
  const double log1p_ = std::log(1.0 - p);
  std::uint64_t v = 1, w = static_cast<std::uint64_t>(-1);
  while (v < n) {
    const double r = rng.real01();
    w += 1 + static_cast<std::uint64_t>(std::log(1.0 - r) / log1p_);
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n)
      edges.emplace_back(static_cast<std::uint32_t>(w),
                         static_cast<std::uint32_t>(v));
  }
  return edges;
}

// Preferential attachment from an m-clique core; targets drawn from the
// repeated-endpoint list so selection weight tracks degree.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> ba_edges(
    std::uint32_t n, std::uint32_t m, Rng& rng) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> endpoints;
  for (std::uint32_t v = 1; v < m; ++v)
    for (std::uint32_t w = 0; w < v; ++w) {
      edges.emplace_back(w, v);
      endpoints.push_back(w);
      endpoints.push_back(v);
    }
  std::vector<std::uint32_t> targets;
  for (std::uint32_t v = m; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const std::uint32_t t =
          endpoints.empty()
              ? static_cast<std::uint32_t>(rng.below(v))
              : endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end())
        targets.push_back(t);
    }
    for (std::uint32_t t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return edges;
}

// Ring lattice with k_half neighbors per side, then each clockwise edge is
// rewired with probability p to a uniform non-duplicate endpoint.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> ws_edges(
    std::uint32_t n, std::uint32_t k_half, double p, Rng& rng) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> present;
  auto key = [](std::uint32_t a, std::uint32_t b) {
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t j = 1; j <= k_half; ++j)
      present.insert(key(v, (v + j) % n));
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t j = 1; j <= k_half; ++j) {
      const std::uint32_t w = (v + j) % n;
      if (rng.real01() >= p) continue;
      if (!present.count(key(v, w))) continue;  // already rewired away
      std::uint32_t fresh = v;
      for (int attempt = 0; attempt < 64; ++attempt) {
        const auto c = static_cast<std::uint32_t>(rng.below(n));
        if (c != v && !present.count(key(v, c))) {
          fresh = c;
          break;
        }
      }
      if (fresh == v) continue;  // saturated neighborhood; keep ring edge
      present.erase(key(v, w));
      present.insert(key(v, fresh));
    }
  }
  return {present.begin(), present.end()};
}

}  // namespace detail

inline FoldedGraph generate(const BaselineSpec& spec) {
  if (spec.n == 0) throw InvalidParams("baseline node count must be positive");
  if (spec.kbar < 0.0) throw InvalidParams("kbar must be non-negative");
  Rng rng(spec.seed);
  switch (spec.kind) {
    case BaselineKind::ER: {
      const double p =
          spec.n > 1 ? spec.kbar / static_cast<double>(spec.n - 1) : 0.0;
      if (p > 1.0) throw InvalidParams("ER: kbar exceeds n-1");
      return detail::edges_to_folded(spec.kind, spec.n,
                                     detail::er_edges(spec.n, p, rng));
    }
    case BaselineKind::BA: {
      const auto m = static_cast<std::uint32_t>(
          std::max(1.0, std::round(spec.kbar / 2.0)));
      if (spec.n < m + 1) throw InvalidParams("BA: need n >= m+1");
      return detail::edges_to_folded(spec.kind, spec.n,
                                     detail::ba_edges(spec.n, m, rng));
    }
    case BaselineKind::WS: {
      if (spec.p_rewire < 0.0 || spec.p_rewire > 1.0)
        throw InvalidParams("WS: p_rewire outside [0,1]");
      const auto k_half =
          static_cast<std::uint32_t>(std::max(1.0, std::round(spec.kbar)));
      if (spec.n <= 2 * k_half) throw InvalidParams("WS: ring degree >= n");
      return detail::edges_to_folded(
          spec.kind, spec.n,
          detail::ws_edges(spec.n, k_half, spec.p_rewire, rng));
    }
  }
  throw InvalidParams("unknown baseline kind");
}

// Average clustering of `folded` over the mean of `s` seeded baselines
// matched on node count and average degree. Throws BaselineZeroClustering
// when the denominator vanishes; report writers render that as "—".
inline double cc_ratio(const FoldedGraph& folded, BaselineKind kind, Rng& rng,
                       int s = 5) {
  if (kind == BaselineKind::WS)
    throw InvalidParams("cc_ratio compares against ER or BA only");
  const USimple g = to_simple(folded);
  if (g.n == 0) throw InvalidParams("cc_ratio on empty graph");
  const double kbar =
      2.0 * static_cast<double>(g.edge_count) / static_cast<double>(g.n);
  double denom = 0.0;
  for (int i = 0; i < s; ++i) {
    BaselineSpec spec;
    spec.kind = kind;
    spec.n = g.n;
    spec.kbar = kbar;
    spec.seed = rng.next();
    denom += avg_clustering(to_simple(generate(spec)));
  }
  denom /= static_cast<double>(s);
  if (denom == 0.0)
    throw BaselineZeroClustering(std::string(to_string(kind)));
  return avg_clustering(g) / denom;
}

}  // namespace gag
