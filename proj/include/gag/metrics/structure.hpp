#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "gag/core/fold.hpp"
#include "gag/util/rng.hpp"

namespace gag {

// Undirected simple view used by all structural statistics. Directed folds
// are symmetrized; adjacency is sorted and deduplicated, loops dropped.
struct USimple {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> adj;
  std::uint64_t edge_count = 0;  // undirected edges

  bool has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const std::uint32_t t = adj[u].size() <= adj[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), t);
  }
};

inline USimple to_simple(const FoldedGraph& g) {
  USimple s;
  s.n = static_cast<std::uint32_t>(g.nodes.size());
  s.adj.assign(s.n, {});
  for (auto [u, v] : g.edges) {
    if (u == v) continue;
    s.adj[u].push_back(v);
    s.adj[v].push_back(u);
  }
  for (auto& nb : s.adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    s.edge_count += nb.size();
  }
  s.edge_count /= 2;
  return s;
}

// Local clustering coefficient; nodes of degree < 2 contribute 0. The mean
// runs over every node of the graph.
inline double avg_clustering(const USimple& s) {
  if (s.n == 0) return 0.0;
  double sum = 0.0;
  for (std::uint32_t v = 0; v < s.n; ++v) {
    const auto& nb = s.adj[v];
    const std::size_t d = nb.size();
    if (d < 2) continue;
    std::uint64_t links = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (s.has_edge(nb[i], nb[j])) ++links;
    sum += 2.0 * static_cast<double>(links) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return sum / static_cast<double>(s.n);
}

inline double avg_clustering(const FoldedGraph& g) {
  return avg_clustering(to_simple(g));
}

// Degree assortativity: Pearson correlation of endpoint total degrees over
// the edge list. Undirected edges contribute both orientations; directed
// edges contribute one. Zero degree variance (regular graphs, empty edge
// lists) raises DegenerateDegrees.
inline double assortativity(const FoldedGraph& g) {
  Degrees d = degrees(g);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  double n = 0;
  auto accumulate = [&](double x, double y) {
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
    n += 1;
  };
  for (auto [u, v] : g.edges) {
    const double du = d.total[u];
    const double dv = d.total[v];
    accumulate(du, dv);
    if (!g.directed) accumulate(dv, du);
  }
  if (n == 0) throw DegenerateDegrees("no edges");
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  if (vx <= 0 || vy <= 0) throw DegenerateDegrees("zero degree variance");
  return cov / std::sqrt(vx * vy);
}

namespace detail {

// Distances from `src` appended to a histogram indexed by hop count.
inline void bfs_distances(const USimple& s, std::uint32_t src,
                          std::vector<std::uint64_t>& hist,
                          std::vector<std::int32_t>& scratch) {
  scratch.assign(s.n, -1);
  scratch[src] = 0;
  std::queue<std::uint32_t> q;
  q.push(src);
  while (!q.empty()) {
    std::uint32_t v = q.front();
    q.pop();
    for (std::uint32_t w : s.adj[v]) {
      if (scratch[w] >= 0) continue;
      scratch[w] = scratch[v] + 1;
      const auto dist = static_cast<std::size_t>(scratch[w]);
      if (hist.size() <= dist) hist.resize(dist + 1, 0);
      ++hist[dist];
      q.push(w);
    }
  }
}

// Linear-interpolated quantile of the multiset encoded by `hist`
// (hist[d] = multiplicity of value d, d >= 1).
inline double hist_quantile(const std::vector<std::uint64_t>& hist,
                            std::uint64_t total, double q) {
  const double h = q * static_cast<double>(total - 1);
  const std::uint64_t lo_rank = static_cast<std::uint64_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo_rank);
  double lo = 0, hi = 0;
  std::uint64_t cum = 0;
  for (std::size_t d = 0; d < hist.size(); ++d) {
    if (hist[d] == 0) continue;
    const std::uint64_t first = cum;
    cum += hist[d];
    if (lo == 0 && lo_rank < cum && lo_rank >= first) lo = static_cast<double>(d);
    if (lo_rank + 1 < cum && lo_rank + 1 >= first) {
      hi = static_cast<double>(d);
      break;
    }
    if (cum == total && lo_rank + 1 >= total) {
      hi = static_cast<double>(d);
      break;
    }
  }
  if (hi < lo) hi = lo;
  return lo + frac * (hi - lo);
}

}  // namespace detail

// Interpolated 90th-percentile of shortest-path distances over connected
// ordered pairs. Exact all-pairs BFS up to `exact_cap` nodes; above that,
// `sample_sources` seeded BFS sources estimate the multiset.
inline double effective_diameter(const USimple& s, double percentile = 0.9,
                                 std::uint32_t exact_cap = 2000,
                                 std::uint32_t sample_sources = 256,
                                 std::uint64_t seed = 1) {
  std::vector<std::uint64_t> hist;
  std::vector<std::int32_t> scratch;
  if (s.n <= exact_cap) {
    for (std::uint32_t v = 0; v < s.n; ++v)
      detail::bfs_distances(s, v, hist, scratch);
  } else {
    Rng rng = derive_rng(seed, 0xD1A);
    std::vector<std::uint32_t> sources = rng.sample(s.n, sample_sources);
    for (std::uint32_t v : sources) detail::bfs_distances(s, v, hist, scratch);
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : hist) total += c;
  if (total == 0) throw NoConnectedPairs("graph has no finite distances");
  return detail::hist_quantile(hist, total, percentile);
}

inline double effective_diameter(const FoldedGraph& g, double percentile = 0.9,
                                 std::uint32_t exact_cap = 2000,
                                 std::uint32_t sample_sources = 256,
                                 std::uint64_t seed = 1) {
  return effective_diameter(to_simple(g), percentile, exact_cap,
                            sample_sources, seed);
}

inline double lcc_fraction(const USimple& s) {
  if (s.n == 0) return 0.0;
  std::vector<std::int32_t> comp(s.n, -1);
  std::uint32_t best = 0;
  for (std::uint32_t v = 0; v < s.n; ++v) {
    if (comp[v] >= 0) continue;
    std::uint32_t size = 0;
    std::queue<std::uint32_t> q;
    q.push(v);
    comp[v] = static_cast<std::int32_t>(v);
    while (!q.empty()) {
      std::uint32_t u = q.front();
      q.pop();
      ++size;
      for (std::uint32_t w : s.adj[u]) {
        if (comp[w] < 0) {
          comp[w] = static_cast<std::int32_t>(v);
          q.push(w);
        }
      }
    }
    best = std::max(best, size);
  }
  return static_cast<double>(best) / static_cast<double>(s.n);
}

inline double lcc_fraction(const FoldedGraph& g) {
  return lcc_fraction(to_simple(g));
}

// Mean neighbor degree per node; nodes of degree 0 report 0.
inline std::vector<double> mean_neighbor_degree(const USimple& s) {
  std::vector<double> out(s.n, 0.0);
  for (std::uint32_t v = 0; v < s.n; ++v) {
    if (s.adj[v].empty()) continue;
    double sum = 0;
    for (std::uint32_t w : s.adj[v]) sum += static_cast<double>(s.adj[w].size());
    out[v] = sum / static_cast<double>(s.adj[v].size());
  }
  return out;
}

// Fraction of degree>=1 nodes whose neighbors' mean degree strictly exceeds
// their own degree.
inline double friendship_paradox_fraction(const USimple& s) {
  std::vector<double> nbr = mean_neighbor_degree(s);
  std::uint64_t eligible = 0, hold = 0;
  for (std::uint32_t v = 0; v < s.n; ++v) {
    if (s.adj[v].empty()) continue;
    ++eligible;
    if (nbr[v] > static_cast<double>(s.adj[v].size())) ++hold;
  }
  if (eligible == 0) return 0.0;
  return static_cast<double>(hold) / static_cast<double>(eligible);
}

inline double friendship_paradox_fraction(const FoldedGraph& g) {
  return friendship_paradox_fraction(to_simple(g));
}

struct StructureSummary {
  std::uint64_t node_count = 0;
  std::uint64_t edge_count = 0;
  double avg_clustering = 0.0;
  double assortativity = 0.0;
  double effective_diameter = 0.0;
  double lcc_fraction = 0.0;
};

inline StructureSummary compute_summary(const FoldedGraph& g,
                                        std::uint32_t exact_cap = 2000,
                                        std::uint64_t seed = 1) {
  USimple s = to_simple(g);
  StructureSummary out;
  out.node_count = g.nodes.size();
  out.edge_count = g.edges.size();
  out.avg_clustering = avg_clustering(s);
  try {
    out.assortativity = assortativity(g);
  } catch (const DegenerateDegrees&) {
    out.assortativity = std::numeric_limits<double>::quiet_NaN();
  }
  try {
    out.effective_diameter = effective_diameter(s, 0.9, exact_cap, 256, seed);
  } catch (const NoConnectedPairs&) {
    out.effective_diameter = std::numeric_limits<double>::quiet_NaN();
  }
  out.lcc_fraction = lcc_fraction(s);
  return out;
}

}  // namespace gag
