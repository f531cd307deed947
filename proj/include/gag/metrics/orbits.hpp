#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gag/metrics/structure.hpp"

namespace gag {

// Orbits of the six connected 4-node graphlets, numbered 4..14 in the usual
// graphlet-orbit order and stored at index orbit-4:
//   path P4:      4 = end, 5 = middle
//   star K1,3:    6 = leaf, 7 = center
//   cycle C4:     8
//   paw:          9 = pendant, 10 = triangle rim, 11 = hinge (degree 3)
//   diamond:     12 = degree-2, 13 = degree-3
//   K4:          14
inline constexpr int kOrbitCount = 11;

using OrbitVector = std::array<std::uint64_t, kOrbitCount>;

namespace detail {

// Orbit of a vertex given the induced edge count and its induced degree.
// (edge count, degree) identifies the orbit uniquely for connected 4-sets.
inline int orbit_of(int edges, int degree) {
  switch (edges) {
    case 3:  // P4 or star
      return -1;  // resolved by caller (needs the degree multiset)
    case 4:  // C4 or paw
      return -1;
    case 5:  // diamond
      return degree == 2 ? 12 : 13;
    case 6:  // K4
      return 14;
    default:
      return -1;
  }
}

struct EsuState {
  const USimple* g = nullptr;
  std::vector<OrbitVector>* out = nullptr;
  std::array<std::uint32_t, 4> sub{};
  int sub_size = 0;

  void count_subgraph() {
    const USimple& s = *g;
    int deg[4] = {0, 0, 0, 0};
    int edges = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (s.has_edge(sub[i], sub[j])) {
          ++edges;
          ++deg[i];
          ++deg[j];
        }
    // ESU only reaches connected 4-sets; edges in [3, 6].
    int max_deg = std::max(std::max(deg[0], deg[1]), std::max(deg[2], deg[3]));
    for (int i = 0; i < 4; ++i) {
      int orbit;
      if (edges == 3) {
        orbit = max_deg == 3 ? (deg[i] == 3 ? 7 : 6)   // star
                             : (deg[i] == 2 ? 5 : 4);  // path
      } else if (edges == 4) {
        orbit = max_deg == 2 ? 8                        // cycle
                             : (deg[i] == 1 ? 9 : (deg[i] == 3 ? 11 : 10));
      } else {
        orbit = orbit_of(edges, deg[i]);
      }
      ++(*out)[sub[i]][static_cast<std::size_t>(orbit - 4)];
    }
  }

  // in_closure[v]: v is in the subgraph or adjacent to it (exclusive
  // neighborhood bookkeeping from the ESU algorithm).
  void extend(std::vector<std::uint32_t>& ext, std::vector<char>& in_closure,
              std::uint32_t root) {
    if (sub_size == 4) {
      count_subgraph();
      return;
    }
    // Candidates fixed at entry; each pick extends with the exclusive
    // neighborhood of the picked vertex.
    while (!ext.empty()) {
      std::uint32_t w = ext.back();
      ext.pop_back();
      sub[static_cast<std::size_t>(sub_size++)] = w;
      if (sub_size == 4) {
        count_subgraph();
        --sub_size;
        continue;
      }
      std::vector<std::uint32_t> next_ext = ext;
      std::vector<std::uint32_t> added;
      for (std::uint32_t u : g->adj[w]) {
        if (u > root && !in_closure[u]) {
          next_ext.push_back(u);
          in_closure[u] = 1;
          added.push_back(u);
        }
      }
      extend(next_ext, in_closure, root);
      for (std::uint32_t u : added) in_closure[u] = 0;
      --sub_size;
    }
  }
};

}  // namespace detail

// Per-node counts of connected 4-node graphlet orbits, via ESU enumeration
// (every connected induced 4-set visited exactly once).
inline std::vector<OrbitVector> orbit_counts(const USimple& g) {
  std::vector<OrbitVector> out(g.n, OrbitVector{});
  detail::EsuState state;
  state.g = &g;
  state.out = &out;
  std::vector<char> in_closure(g.n, 0);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    state.sub[0] = v;
    state.sub_size = 1;
    std::vector<std::uint32_t> ext;
    in_closure[v] = 1;
    std::vector<std::uint32_t> added;
    for (std::uint32_t u : g.adj[v]) {
      if (u > v) {
        ext.push_back(u);
        in_closure[u] = 1;
        added.push_back(u);
      }
    }
    state.extend(ext, in_closure, v);
    in_closure[v] = 0;
    for (std::uint32_t u : added) in_closure[u] = 0;
  }
  return out;
}

// Mean orbit counts over nodes; the graph signature used by the orbit MMD.
inline std::array<double, kOrbitCount> mean_orbit_counts(const USimple& g) {
  std::array<double, kOrbitCount> mean{};
  if (g.n == 0) return mean;
  std::vector<OrbitVector> counts = orbit_counts(g);
  for (const OrbitVector& c : counts)
    for (int i = 0; i < kOrbitCount; ++i)
      mean[static_cast<std::size_t>(i)] +=
          static_cast<double>(c[static_cast<std::size_t>(i)]);
  for (double& m : mean) m /= static_cast<double>(g.n);
  return mean;
}

}  // namespace gag
