#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gag/baselines/baselines.hpp"
#include "gag/core/fold.hpp"
#include "gag/core/io.hpp"
#include "gag/engine/engine.hpp"
#include "gag/metrics/mmd.hpp"
#include "gag/metrics/powerlaw.hpp"
#include "gag/metrics/series.hpp"
#include "gag/metrics/structure.hpp"

namespace gag {
namespace cli {

namespace detail {

// Deterministic float formatting for CSV/JSON-adjacent output.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::vector<FoldName> pick_folds(const ScenarioSpec& spec,
                                        const std::vector<std::string>& names) {
  if (names.empty() ||
      (names.size() == 1 && to_lower(names.front()) == "all"))
    return spec.fold_specs;
  std::vector<FoldName> out;
  for (const std::string& n : names) out.push_back(fold_name_from(trim(n)));
  return out;
}

// Leading slice of the run up to and including `round`; node and edge
// rounds are monotone by construction, so prefixes are contiguous.
inline BipartiteGraph prefix_graph(const BipartiteGraph& g,
                                   const ScenarioSpec& spec,
                                   std::uint32_t round) {
  BipartiteGraph out = make_graph(spec);
  for (const ActorNode& a : g.actors()) {
    if (a.created_round > round) break;
    out.add_actor(a.profile_text, a.created_round, a.core);
  }
  for (const ItemNode& it : g.items()) {
    if (it.created_round > round) break;
    out.add_item(it.attrs, it.creator, it.created_round);
  }
  for (const TypedEdge& e : g.edges()) {
    if (e.round > round) break;
    out.add_edge(e.actor, e.item, e.kind, e.round);
  }
  return out;
}

inline std::uint32_t last_round(const BipartiteGraph& g) {
  std::uint32_t r = 0;
  if (!g.actors().empty()) r = std::max(r, g.actors().back().created_round);
  if (!g.items().empty()) r = std::max(r, g.items().back().created_round);
  if (!g.edges().empty()) r = std::max(r, g.edges().back().round);
  return r;
}

inline nlohmann::ordered_json summary_json(const StructureSummary& s) {
  nlohmann::ordered_json j;
  j["nodes"] = s.node_count;
  j["edges"] = s.edge_count;
  j["avg_clustering"] = s.avg_clustering;
  j["assortativity"] = s.assortativity;
  j["effective_diameter"] = s.effective_diameter;
  j["lcc_fraction"] = s.lcc_fraction;
  return j;
}

inline std::vector<std::uint32_t> fold_degrees(const FoldedGraph& f) {
  const USimple s = to_simple(f);
  std::vector<std::uint32_t> deg;
  deg.reserve(s.n);
  for (const auto& nb : s.adj)
    deg.push_back(static_cast<std::uint32_t>(nb.size()));
  return deg;
}

}  // namespace detail

// simulate: grow a graph and persist the full run into out_dir. Requested
// folds are written as edge lists under out_dir/folds/.
inline void cmd_simulate(const std::optional<std::filesystem::path>& config,
                         const std::vector<std::pair<std::string, std::string>>&
                             overrides,
                         const std::vector<std::string>& fold_names) {
  SimConfig cfg = resolve_config(config, overrides);
  if (cfg.out_dir.empty()) cfg.out_dir = "out";
  RunResult res = run_simulation(cfg);
  write_run_outputs(res, cfg.out_dir);
  if (!fold_names.empty()) {
    const ScenarioSpec& spec = cfg.spec();
    std::filesystem::create_directories(std::filesystem::path(cfg.out_dir) /
                                        "folds");
    for (FoldName name : detail::pick_folds(spec, fold_names)) {
      FoldedGraph f = fold(res.graph, fold_spec(name));
      write_folded_tsv(f, std::filesystem::path(cfg.out_dir) / "folds" /
                              (std::string(to_string(name)) + ".tsv"));
    }
  }
  std::printf("%s: %zu actors, %zu items, %zu edges over %zu rounds (%s)\n",
              cfg.scenario_id.c_str(), res.graph.actors().size(),
              res.graph.items().size(), res.graph.edges().size(),
              res.manifest.rounds.size(), res.manifest.termination.c_str());
  std::printf("outputs in %s\n", cfg.out_dir.c_str());
}

// fold: project a saved run into the scenario's folded graphs.
inline void cmd_fold(const std::filesystem::path& in_dir,
                     const std::string& scenario_id,
                     const std::vector<std::string>& fold_names,
                     std::filesystem::path out_dir) {
  const ScenarioSpec& spec = scenario_by_id(scenario_id);
  BipartiteGraph g = load_graph(in_dir, make_graph(spec));
  if (out_dir.empty()) out_dir = in_dir / "folds";
  std::filesystem::create_directories(out_dir);
  for (FoldName name : detail::pick_folds(spec, fold_names)) {
    FoldedGraph f = fold(g, fold_spec(name));
    write_folded_tsv(f, out_dir / (std::string(to_string(name)) + ".tsv"));
    std::printf("%-14s %8zu nodes %10zu edges\n",
                std::string(to_string(name)).c_str(), f.nodes.size(),
                f.edges.size());
  }
}

// evaluate: metrics.json plus plot CSVs for every requested fold. Output is
// a pure function of the saved run, so re-running writes identical bytes.
inline void cmd_evaluate(const std::filesystem::path& in_dir,
                         const std::string& scenario_id,
                         const std::vector<std::string>& fold_names,
                         std::filesystem::path out_dir) {
  const ScenarioSpec& spec = scenario_by_id(scenario_id);
  BipartiteGraph g = load_graph(in_dir, make_graph(spec));
  if (out_dir.empty()) out_dir = in_dir;
  std::filesystem::create_directories(out_dir / "plots");

  nlohmann::ordered_json metrics;
  metrics["scenario"] = spec.id;

  // Edge counts per simulated round, for the burst-periodicity statistic.
  std::vector<double> edges_per_round;
  if (std::filesystem::exists(in_dir / "manifest.json")) {
    std::ifstream in(in_dir / "manifest.json");
    nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
    if (!manifest.is_discarded() && manifest.contains("rounds"))
      for (const nlohmann::json& r : manifest["rounds"]) {
        double total = 0;
        if (r.contains("new_edges"))
          for (const auto& [kind, n] : r["new_edges"].items())
            total += n.get<double>();
        edges_per_round.push_back(total);
      }
  }
  if (!edges_per_round.empty()) {
    metrics["new_edges_per_round"] = edges_per_round;
    try {
      metrics["snr_periodicity"] = snr_periodicity(edges_per_round);
    } catch (const Error&) {
      metrics["snr_periodicity"] = nullptr;  // too short or constant
    }
  }

  const std::uint32_t final_round = detail::last_round(g);
  nlohmann::ordered_json folds;
  for (FoldName name : detail::pick_folds(spec, fold_names)) {
    const std::string fname{to_string(name)};
    FoldedGraph f = fold(g, fold_spec(name));
    USimple s = to_simple(f);

    nlohmann::ordered_json jf;
    jf["summary"] = detail::summary_json(compute_summary(f));
    std::vector<std::uint32_t> deg = detail::fold_degrees(f);
    try {
      PowerLawFit fit = fit_power_law(deg);
      jf["power_law"] = {{"alpha", fit.alpha},
                         {"k_min", fit.k_min},
                         {"d_k", fit.d_k},
                         {"n_tail", fit.n_tail},
                         {"valid", fit_is_valid(fit)}};
    } catch (const Error&) {
      jf["power_law"] = nullptr;
    }
    jf["friendship_paradox"] = friendship_paradox_fraction(s);
    folds[fname] = std::move(jf);

    // Degree distribution on log axes.
    {
      std::ofstream out =
          open_out(out_dir / "plots" / (fname + "_degree_pdf_loglog.csv"));
      out << "degree,log10_degree,pdf,log10_pdf\n";
      std::map<std::uint32_t, std::uint64_t> counts;
      for (std::uint32_t d : deg)
        if (d > 0) ++counts[d];
      for (const auto& [d, c] : counts) {
        double pdf = static_cast<double>(c) / static_cast<double>(s.n);
        out << d << ',' << detail::fmt(std::log10(double(d))) << ','
            << detail::fmt(pdf) << ',' << detail::fmt(std::log10(pdf))
            << '\n';
      }
    }
    // Shrinking-diameter trace over round prefixes.
    {
      std::ofstream out = open_out(out_dir / "plots" /
                                   (fname + "_diameter_over_rounds.csv"));
      out << "round,nodes,edges,effective_diameter\n";
      std::uint32_t step =
          final_round > 25 ? (final_round + 24) / 25 : 1;
      for (std::uint32_t r = 1; r <= final_round; r += step) {
        std::uint32_t upto = std::min(r, final_round);
        FoldedGraph fp =
            fold(detail::prefix_graph(g, spec, upto), fold_spec(name));
        double d;
        try {
          d = effective_diameter(to_simple(fp));
        } catch (const NoConnectedPairs&) {
          d = std::numeric_limits<double>::quiet_NaN();
        }
        out << upto << ',' << fp.nodes.size() << ',' << fp.edges.size()
            << ',' << detail::fmt(d) << '\n';
      }
    }
    // Degree vs mean neighbor degree, one row per node.
    {
      std::ofstream out = open_out(
          out_dir / "plots" / (fname + "_neighbor_degree_scatter.csv"));
      out << "node,degree,mean_neighbor_degree\n";
      std::vector<double> mnd = mean_neighbor_degree(s);
      for (std::uint32_t v = 0; v < s.n; ++v)
        out << f.nodes[v].ordinal << ',' << s.adj[v].size() << ','
            << detail::fmt(mnd[v]) << '\n';
    }
  }
  metrics["folds"] = std::move(folds);
  {
    std::ofstream out = open_out(out_dir / "metrics.json");
    out << metrics.dump(2) << '\n';
  }
  std::printf("metrics.json and plot CSVs written to %s\n",
              out_dir.string().c_str());
}

// compare: each fold against degree-matched ER/BA/WS graphs. Clustering
// ratios use ER and BA (a zero-clustering baseline prints the — sentinel);
// distribution discrepancies are gated by node count to keep the spectral
// statistic tractable.
inline void cmd_compare(const std::filesystem::path& in_dir,
                        const std::string& scenario_id,
                        const std::vector<std::string>& fold_names,
                        std::filesystem::path out_dir, std::uint64_t seed,
                        std::uint32_t samples = 5,
                        std::uint32_t mmd_cap = 400) {
  const ScenarioSpec& spec = scenario_by_id(scenario_id);
  BipartiteGraph g = load_graph(in_dir, make_graph(spec));
  if (out_dir.empty()) out_dir = in_dir;
  std::filesystem::create_directories(out_dir);
  std::ofstream out = open_out(out_dir / "compare.csv");
  out << "fold,model,nodes,edges,avg_clustering,model_clustering,cc_ratio,"
         "mmd_degree,mmd_clustering,mmd_spectrum,mmd_orbit,valid_fraction,"
         "gem\n";

  for (FoldName name : detail::pick_folds(spec, fold_names)) {
    FoldedGraph f = fold(g, fold_spec(name));
    USimple s = to_simple(f);
    if (s.n == 0) continue;
    const double kbar = 2.0 * double(s.edge_count) / double(s.n);

    for (BaselineKind kind :
         {BaselineKind::ER, BaselineKind::BA, BaselineKind::WS}) {
      Rng rng = derive_rng(seed, static_cast<std::uint64_t>(name),
                           static_cast<std::uint64_t>(kind));
      std::vector<USimple> reference;
      double model_cc = 0.0;
      for (std::uint32_t i = 0; i < samples; ++i) {
        BaselineSpec bs;
        bs.kind = kind;
        bs.n = s.n;
        bs.kbar = kbar;
        bs.seed = rng.next();
        reference.push_back(to_simple(generate(bs)));
        model_cc += avg_clustering(reference.back());
      }
      model_cc /= samples;

      std::string ratio = "—";  // — when undefined
      if (kind != BaselineKind::WS && model_cc > 0.0)
        ratio = detail::fmt(avg_clustering(s) / model_cc);

      std::string md, mc, msp, mo, vf, gem;
      if (s.n <= mmd_cap) {
        MmdReport r = compute_mmd_report({s}, reference);
        md = detail::fmt(r.mmd_degree);
        mc = detail::fmt(r.mmd_clustering);
        msp = detail::fmt(r.mmd_spectrum);
        mo = detail::fmt(r.mmd_orbit);
        vf = detail::fmt(r.valid_fraction);
        gem = detail::fmt(r.gem);
      }
      out << std::string(to_string(name)) << ','
          << std::string(to_string(kind)) << ',' << s.n << ','
          << s.edge_count << ',' << detail::fmt(avg_clustering(s)) << ','
          << detail::fmt(model_cc) << ',' << ratio << ',' << md << ','
          << mc << ',' << msp << ',' << mo << ',' << vf << ',' << gem
          << '\n';
    }
  }
  std::printf("compare.csv written to %s\n", out_dir.string().c_str());
}

// ablate: re-run one config under the standard recipe grid (recall depth,
// hub rate, rank-filter subsets, rerank toggle) with a shared seed and
// collect every fold's structure summary into one CSV.
inline void cmd_ablate(const std::optional<std::filesystem::path>& config,
                       const std::vector<std::pair<std::string, std::string>>&
                           overrides,
                       std::filesystem::path out_dir) {
  SimConfig base = resolve_config(config, overrides);
  if (out_dir.empty())
    out_dir = base.out_dir.empty() ? "ablation" : base.out_dir;
  std::filesystem::create_directories(out_dir);
  const ScenarioSpec& spec = base.spec();

  std::ofstream out = open_out(out_dir / "ablation.csv");
  out << "recipe,variant,fold,nodes,edges,avg_clustering,assortativity,"
         "effective_diameter,lcc_fraction\n";

  auto emit = [&](const std::string& recipe, const std::string& variant,
                  const SimConfig& cfg, const ScenarioSpec& run_spec) {
    RunResult res = run_simulation(cfg, run_spec);
    for (FoldName name : spec.fold_specs) {
      StructureSummary s =
          compute_summary(fold(res.graph, fold_spec(name)));
      out << recipe << ',' << variant << ',' << std::string(to_string(name))
          << ',' << s.node_count << ',' << s.edge_count << ','
          << detail::fmt(s.avg_clustering) << ','
          << detail::fmt(s.assortativity) << ','
          << detail::fmt(s.effective_diameter) << ','
          << detail::fmt(s.lcc_fraction) << '\n';
    }
    std::printf("done %s %s\n", recipe.c_str(), variant.c_str());
  };

  for (std::uint32_t n_r : {3u, 5u, 10u, 20u}) {
    SimConfig cfg = base;
    cfg.srag.n_r = n_r;
    emit("n_r", std::to_string(n_r), cfg, spec);
  }
  for (double hub : {0.0, 0.1, 0.2}) {
    SimConfig cfg = base;
    cfg.srag.hub_rate = hub;
    cfg.activation.hub_rate = hub;
    emit("hub_rate", detail::fmt(hub), cfg, spec);
  }
  {
    const std::size_t m = spec.filter_items.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      ScenarioSpec sub = spec;
      sub.filter_items.clear();
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) sub.filter_items.push_back(spec.filter_items[i]);
      SimConfig cfg = base;
      cfg.srag.n_f = static_cast<std::uint32_t>(sub.filter_items.size());
      std::string variant =
          "{" + join(sub.filter_items, "+") + "}";
      emit("filters", variant, cfg, sub);
    }
  }
  for (bool rerank : {true, false}) {
    SimConfig cfg = base;
    cfg.srag.rerank_enabled = rerank;
    emit("rerank", rerank ? "on" : "off", cfg, spec);
  }
  std::printf("ablation.csv written to %s\n", out_dir.string().c_str());
}

// speedup: identical run at each worker count; reports wall time per
// interaction and the reduction against the first entry.
inline void cmd_speedup(const std::optional<std::filesystem::path>& config,
                        const std::vector<std::pair<std::string, std::string>>&
                            overrides,
                        const std::vector<std::uint32_t>& port_values,
                        std::filesystem::path out_dir) {
  SimConfig base = resolve_config(config, overrides);
  if (port_values.empty()) throw ConfigError("speedup needs --ports values");
  std::vector<SpeedupRow> rows = measure_speedup(base, port_values);
  if (out_dir.empty())
    out_dir = base.out_dir.empty() ? "." : base.out_dir;
  std::filesystem::create_directories(out_dir);
  std::ofstream out = open_out(out_dir / "speedup.csv");
  out << "ports,ms_per_interaction,reduction_pct\n";
  std::printf("%6s %20s %14s\n", "ports", "ms/interaction", "reduction %");
  for (const SpeedupRow& r : rows) {
    out << r.ports << ',' << detail::fmt(r.ms_per_interaction) << ','
        << detail::fmt(r.reduction_pct) << '\n';
    std::printf("%6u %20.3f %14.1f\n", r.ports, r.ms_per_interaction,
                r.reduction_pct);
  }
}

}  // namespace cli
}  // namespace gag
