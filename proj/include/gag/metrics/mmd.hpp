#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gag/core/fold.hpp"
#include "gag/metrics/orbits.hpp"
#include "gag/metrics/powerlaw.hpp"
#include "gag/metrics/structure.hpp"

namespace gag {

// Distribution signatures per statistic, chosen once and used everywhere:
//   degree:     normalized histogram over 0..max_degree (shared support)
//   clustering: 100 bins on [0, 1]
//   spectrum:   normalized-Laplacian eigenvalues, 200 bins on [0, 2]
//   orbit:      mean 4-node connected-graphlet orbit counts per node
// Ground distance between histograms is 1D earth-mover distance with unit
// bin spacing; the orbit signature compares with plain Euclidean distance.
// Kernel widths are fixed here: sigma = 1 (degree), 10 (clustering bins),
// 10 (spectrum bins), 30 (orbit).
inline constexpr int kClusteringBins = 100;
inline constexpr int kSpectrumBins = 200;
inline constexpr double kSigmaDegree = 1.0;
inline constexpr double kSigmaClustering = 10.0;
inline constexpr double kSigmaSpectrum = 10.0;
inline constexpr double kSigmaOrbit = 30.0;

enum class GraphStatistic : std::uint8_t { Degree, Clustering, Spectrum, Orbit };

inline std::vector<double> degree_histogram(const USimple& g) {
  std::size_t max_deg = 0;
  for (const auto& nb : g.adj) max_deg = std::max(max_deg, nb.size());
  std::vector<double> h(max_deg + 1, 0.0);
  for (const auto& nb : g.adj) h[nb.size()] += 1.0;
  for (double& v : h) v /= static_cast<double>(g.n == 0 ? 1 : g.n);
  return h;
}

inline std::vector<double> clustering_histogram(const USimple& g) {
  std::vector<double> h(kClusteringBins, 0.0);
  if (g.n == 0) return h;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    const auto& nb = g.adj[v];
    double c = 0.0;
    if (nb.size() >= 2) {
      std::uint64_t links = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (g.has_edge(nb[i], nb[j])) ++links;
      c = 2.0 * static_cast<double>(links) /
          (static_cast<double>(nb.size()) * static_cast<double>(nb.size() - 1));
    }
    int bin = std::min(kClusteringBins - 1,
                       static_cast<int>(c * kClusteringBins));
    h[static_cast<std::size_t>(bin)] += 1.0;
  }
  for (double& v : h) v /= static_cast<double>(g.n);
  return h;
}

// Eigenvalues of L = I - D^-1/2 A D^-1/2; isolated nodes contribute 0.
inline std::vector<double> laplacian_spectrum(const USimple& g) {
  const int n = static_cast<int>(g.n);
  if (n == 0) return {};
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    if (!g.adj[static_cast<std::size_t>(v)].empty()) lap(v, v) = 1.0;
    for (std::uint32_t w : g.adj[static_cast<std::size_t>(v)]) {
      const double norm =
          std::sqrt(static_cast<double>(g.adj[static_cast<std::size_t>(v)].size()) *
                    static_cast<double>(g.adj[w].size()));
      lap(v, static_cast<int>(w)) = -1.0 / norm;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      lap, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

inline std::vector<double> spectrum_histogram(const USimple& g) {
  std::vector<double> h(kSpectrumBins, 0.0);
  if (g.n == 0) return h;
  std::vector<double> eig = laplacian_spectrum(g);
  for (double lambda : eig) {
    double clamped = std::min(2.0, std::max(0.0, lambda));
    int bin = std::min(kSpectrumBins - 1,
                       static_cast<int>(clamped / 2.0 * kSpectrumBins));
    h[static_cast<std::size_t>(bin)] += 1.0;
  }
  for (double& v : h) v /= static_cast<double>(eig.size());
  return h;
}

// 1D EMD with unit bin spacing: total |CDF difference|. Shorter histogram
// is zero-padded.
inline double emd_1d(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t len = std::max(a.size(), b.size());
  double cum = 0.0, total = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double av = i < a.size() ? a[i] : 0.0;
    const double bv = i < b.size() ? b[i] : 0.0;
    cum += av - bv;
    total += std::fabs(cum);
  }
  return total;
}

namespace detail {

struct GraphSignature {
  std::vector<double> hist;             // histogram statistics
  std::array<double, kOrbitCount> vec{};  // orbit statistic
};

inline GraphSignature signature(const USimple& g, GraphStatistic stat) {
  GraphSignature s;
  switch (stat) {
    case GraphStatistic::Degree: s.hist = degree_histogram(g); break;
    case GraphStatistic::Clustering: s.hist = clustering_histogram(g); break;
    case GraphStatistic::Spectrum: s.hist = spectrum_histogram(g); break;
    case GraphStatistic::Orbit: s.vec = mean_orbit_counts(g); break;
  }
  return s;
}

inline double kernel(const GraphSignature& a, const GraphSignature& b,
                     GraphStatistic stat) {
  double dist = 0.0, sigma = 1.0;
  switch (stat) {
    case GraphStatistic::Degree:
      dist = emd_1d(a.hist, b.hist);
      sigma = kSigmaDegree;
      break;
    case GraphStatistic::Clustering:
      dist = emd_1d(a.hist, b.hist);
      sigma = kSigmaClustering;
      break;
    case GraphStatistic::Spectrum:
      dist = emd_1d(a.hist, b.hist);
      sigma = kSigmaSpectrum;
      break;
    case GraphStatistic::Orbit: {
      double sq = 0.0;
      for (int i = 0; i < kOrbitCount; ++i) {
        const double d = a.vec[static_cast<std::size_t>(i)] -
                         b.vec[static_cast<std::size_t>(i)];
        sq += d * d;
      }
      dist = std::sqrt(sq);
      sigma = kSigmaOrbit;
      break;
    }
  }
  return std::exp(-dist * dist / (2.0 * sigma * sigma));
}

}  // namespace detail

// Squared-MMD (biased V-statistic) with the Gaussian kernel above. A set
// against itself is exactly 0 up to rounding.
inline double mmd(const std::vector<USimple>& set_a,
                  const std::vector<USimple>& set_b, GraphStatistic stat) {
  if (set_a.empty() || set_b.empty())
    throw InvalidParams("mmd needs non-empty graph sets");
  std::vector<detail::GraphSignature> sa, sb;
  sa.reserve(set_a.size());
  sb.reserve(set_b.size());
  for (const USimple& g : set_a) sa.push_back(detail::signature(g, stat));
  for (const USimple& g : set_b) sb.push_back(detail::signature(g, stat));

  auto mean_kernel = [stat](const std::vector<detail::GraphSignature>& x,
                            const std::vector<detail::GraphSignature>& y) {
    double sum = 0.0;
    for (const auto& a : x)
      for (const auto& b : y) sum += detail::kernel(a, b, stat);
    return sum / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
  };
  return mean_kernel(sa, sa) + mean_kernel(sb, sb) - 2.0 * mean_kernel(sa, sb);
}

inline double mmd(const std::vector<FoldedGraph>& set_a,
                  const std::vector<FoldedGraph>& set_b, GraphStatistic stat) {
  std::vector<USimple> a, b;
  for (const FoldedGraph& g : set_a) a.push_back(to_simple(g));
  for (const FoldedGraph& g : set_b) b.push_back(to_simple(g));
  return mmd(a, b, stat);
}

struct MmdReport {
  double mmd_degree = 0.0;
  double mmd_clustering = 0.0;
  double mmd_spectrum = 0.0;
  double mmd_orbit = 0.0;
  double valid_fraction = 0.0;
  double gem = 0.0;
};

// Bounded map for MMD scores: sigma_bar(m) = 1 - 1/(1 + e^-m), i.e. 0.5 at
// a perfect match and -> 0 as the discrepancy grows.
inline double sigma_bar(double m) { return 1.0 - 1.0 / (1.0 + std::exp(-m)); }

// Composite score: mean of the four mapped MMDs and the valid fraction.
// All MMDs at 0 with valid = 1 gives the maximum 0.6.
inline double gem_score(double mmd_degree, double mmd_clustering,
                        double mmd_spectrum, double mmd_orbit,
                        double valid_fraction) {
  return (sigma_bar(mmd_degree) + sigma_bar(mmd_clustering) +
          sigma_bar(mmd_spectrum) + sigma_bar(mmd_orbit) + valid_fraction) /
         5.0;
}

// Valid fraction of `generated`; MMDs of generated vs reference.
inline MmdReport compute_mmd_report(const std::vector<USimple>& generated,
                                    const std::vector<USimple>& reference) {
  MmdReport r;
  r.mmd_degree = mmd(generated, reference, GraphStatistic::Degree);
  r.mmd_clustering = mmd(generated, reference, GraphStatistic::Clustering);
  r.mmd_spectrum = mmd(generated, reference, GraphStatistic::Spectrum);
  r.mmd_orbit = mmd(generated, reference, GraphStatistic::Orbit);
  std::size_t valid = 0;
  for (const USimple& g : generated) {
    std::vector<std::uint32_t> deg;
    deg.reserve(g.n);
    for (const auto& nb : g.adj)
      deg.push_back(static_cast<std::uint32_t>(nb.size()));
    try {
      if (fit_is_valid(fit_power_law(deg))) ++valid;
    } catch (const InsufficientTail&) {
      // counts as invalid
    }
  }
  r.valid_fraction = generated.empty()
                         ? 0.0
                         : static_cast<double>(valid) /
                               static_cast<double>(generated.size());
  r.gem = gem_score(r.mmd_degree, r.mmd_clustering, r.mmd_spectrum,
                    r.mmd_orbit, r.valid_fraction);
  return r;
}

}  // namespace gag
