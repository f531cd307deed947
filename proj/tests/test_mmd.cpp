#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gag/metrics/mmd.hpp"
#include "gag/util/rng.hpp"

using namespace gag;

namespace {

USimple simple_graph(std::uint32_t n,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  FoldedGraph g;
  g.name = "test";
  g.node_kind = NodeKind::Actor;
  for (std::uint32_t v = 0; v < n; ++v) g.nodes.push_back(actor_id(v));
  g.edges = edges;
  g.attrs.assign(n, "");
  return to_simple(g);
}

USimple triangle() { return simple_graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
USimple path3() { return simple_graph(3, {{0, 1}, {1, 2}}); }

std::vector<USimple> random_set(std::uint64_t seed, int count) {
  std::vector<USimple> out;
  Rng rng = derive_rng(seed, 0);
  for (int i = 0; i < count; ++i) {
    const auto n = static_cast<std::uint32_t>(5 + rng.below(10));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b)
        if (rng.real01() < 0.3) edges.emplace_back(a, b);
    out.push_back(simple_graph(n, edges));
  }
  return out;
}

constexpr GraphStatistic kAllStats[4] = {
    GraphStatistic::Degree, GraphStatistic::Clustering,
    GraphStatistic::Spectrum, GraphStatistic::Orbit};

}  // namespace

TEST_CASE("histograms are probability vectors") {
  USimple g = random_set(100, 1)[0];
  for (const auto& h :
       {degree_histogram(g), clustering_histogram(g), spectrum_histogram(g)}) {
    double sum = 0.0;
    for (double x : h) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("1D earth-mover distance on histograms") {
  CHECK(emd_1d({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0));
  // Unit mass moved three bins.
  CHECK(emd_1d({1, 0, 0, 0}, {0, 0, 0, 1}) == doctest::Approx(3.0));
  // Shorter histogram is zero-padded.
  CHECK(emd_1d({1}, {0, 0, 1}) == doctest::Approx(2.0));
  CHECK(emd_1d({0, 0, 1}, {1}) == doctest::Approx(2.0));
}

TEST_CASE("normalized Laplacian spectra of reference graphs") {
  auto tri = laplacian_spectrum(triangle());
  std::sort(tri.begin(), tri.end());
  CHECK(tri[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(tri[1] == doctest::Approx(1.5));
  CHECK(tri[2] == doctest::Approx(1.5));

  auto p3 = laplacian_spectrum(path3());
  std::sort(p3.begin(), p3.end());
  CHECK(p3[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(p3[1] == doctest::Approx(1.0));
  CHECK(p3[2] == doctest::Approx(2.0));

  // K_n: eigenvalue 0 once, n/(n-1) with multiplicity n-1.
  auto k4 = laplacian_spectrum(simple_graph(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  std::sort(k4.begin(), k4.end());
  CHECK(k4[0] == doctest::Approx(0.0).epsilon(1e-9));
  for (int i = 1; i < 4; ++i) CHECK(k4[i] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("MMD of a set against itself vanishes for every statistic") {
  for (std::uint64_t seed : {200, 201, 202, 203}) {
    auto set = random_set(seed, 4);
    for (GraphStatistic stat : kAllStats) {
      CHECK(std::fabs(mmd(set, set, stat)) <= 1e-9);
    }
  }
}

TEST_CASE("MMD is symmetric in its arguments") {
  auto a = random_set(210, 3);
  auto b = random_set(211, 4);
  for (GraphStatistic stat : kAllStats) {
    CHECK(mmd(a, b, stat) == doctest::Approx(mmd(b, a, stat)).epsilon(1e-12));
    CHECK(mmd(a, b, stat) >= 0.0);
  }
}

TEST_CASE("singleton triangle vs path matches hand-computed kernel values") {
  std::vector<USimple> t{triangle()};
  std::vector<USimple> p{path3()};

  // Degree histograms [0,0,1] vs [0,2/3,1/3]: EMD = 2/3, sigma = 1.
  CHECK(mmd(t, p, GraphStatistic::Degree) ==
        doctest::Approx(2.0 - 2.0 * std::exp(-2.0 / 9.0)));

  // Clustering mass at bin 99 vs bin 0: EMD = 99, sigma = 10.
  CHECK(mmd(t, p, GraphStatistic::Clustering) ==
        doctest::Approx(2.0 - 2.0 * std::exp(-99.0 * 99.0 / 200.0)));

  // Spectra {0,1.5,1.5} vs {0,1,2} over 200 bins on [0,2]: EMD = 33,
  // sigma = 10. Eigen-solver jitter can move a value across a bin edge,
  // hence the loose epsilon.
  CHECK(mmd(t, p, GraphStatistic::Spectrum) ==
        doctest::Approx(2.0 - 2.0 * std::exp(-33.0 * 33.0 / 200.0))
            .epsilon(5e-3));

  // No 4-node subgraphs on 3 nodes: identical zero signatures.
  CHECK(std::fabs(mmd(t, p, GraphStatistic::Orbit)) <= 1e-12);
}

TEST_CASE("mmd rejects empty sets") {
  std::vector<USimple> some{triangle()};
  std::vector<USimple> none;
  CHECK_THROWS_AS((void)mmd(some, none, GraphStatistic::Degree), InvalidParams);
  CHECK_THROWS_AS((void)mmd(none, some, GraphStatistic::Degree), InvalidParams);
}

TEST_CASE("composite score: bounds, boundary case, monotonicity") {
  CHECK(sigma_bar(0.0) == doctest::Approx(0.5));
  CHECK(sigma_bar(50.0) < 1e-9);

  // All MMDs zero with a fully valid set is the maximum: 0.6.
  CHECK(gem_score(0, 0, 0, 0, 1.0) == doctest::Approx(0.6));

  // Decreasing any single MMD never decreases the score.
  const double grid[5] = {0.0, 0.25, 0.5, 1.0, 2.0};
  for (double base : grid) {
    for (int which = 0; which < 4; ++which) {
      double prev = -1.0;
      for (int gi = 4; gi >= 0; --gi) {
        double m[4] = {base, base, base, base};
        m[which] = grid[gi];
        const double s = gem_score(m[0], m[1], m[2], m[3], 0.8);
        CHECK(s >= prev);
        prev = s;
      }
    }
  }
}

TEST_CASE("full report carries the validity fraction into the score") {
  auto gen = random_set(220, 3);
  auto ref = random_set(221, 3);
  MmdReport r = compute_mmd_report(gen, ref);
  CHECK(r.mmd_degree >= 0.0);
  CHECK(r.mmd_clustering >= 0.0);
  CHECK(r.mmd_spectrum >= 0.0);
  CHECK(r.mmd_orbit >= 0.0);
  CHECK(r.valid_fraction >= 0.0);
  CHECK(r.valid_fraction <= 1.0);
  CHECK(r.gem == doctest::Approx(gem_score(r.mmd_degree, r.mmd_clustering,
                                           r.mmd_spectrum, r.mmd_orbit,
                                           r.valid_fraction)));
  CHECK(r.gem >= 0.0);
  CHECK(r.gem <= 0.6 + 1e-12);
}
