#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "gag/core/fold.hpp"
#include "gag/core/graph.hpp"
#include "gag/core/types.hpp"
#include "gag/util/text.hpp"

namespace gag {

// Persisted graph layout:
//   nodes.jsonl  one object per node: {"id","kind","attrs","creator","round","core"}
//                actors carry {"profile": ...} as attrs and core true/false;
//                items carry their attribute map and creator ordinal or null.
//   edges.tsv    actor<TAB>item<TAB>kind<TAB>round
// Writers emit nodes in ordinal order (actors first) and edges in insertion
// order, so two identical graphs serialize to identical bytes.

using ojson = nlohmann::ordered_json;

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::filesystem::create_directories(p.parent_path().empty()
                                          ? std::filesystem::path(".")
                                          : p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + p.string());
  return out;
}

inline std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + p.string());
  return in;
}

inline void write_nodes_jsonl(const BipartiteGraph& g,
                              const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const ActorNode& a : g.actors()) {
    ojson j;
    j["id"] = a.ordinal;
    j["kind"] = "actor";
    j["attrs"] = ojson::object({{"profile", a.profile_text}});
    j["creator"] = nullptr;
    j["round"] = a.created_round;
    j["core"] = a.core;
    out << j.dump() << "\n";
  }
  for (const ItemNode& i : g.items()) {
    ojson j;
    j["id"] = i.ordinal;
    j["kind"] = "item";
    ojson attrs = ojson::object();
    for (const auto& [k, v] : i.attrs) attrs[k] = v;
    j["attrs"] = attrs;
    if (i.creator) {
      j["creator"] = *i.creator;
    } else {
      j["creator"] = nullptr;
    }
    j["round"] = i.created_round;
    j["core"] = nullptr;
    out << j.dump() << "\n";
  }
}

inline void write_edges_tsv(const BipartiteGraph& g,
                            const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const TypedEdge& e : g.edges()) {
    out << e.actor << "\t" << e.item << "\t" << to_string(e.kind) << "\t"
        << e.round << "\n";
  }
}

inline void save_graph(const BipartiteGraph& g,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_nodes_jsonl(g, dir / "nodes.jsonl");
  write_edges_tsv(g, dir / "edges.tsv");
}

// Loads into `base` (which carries the scenario's kind/attr constraints when
// supplied). Nodes must appear in ordinal order per kind.
inline BipartiteGraph load_graph(const std::filesystem::path& dir,
                                 BipartiteGraph base = BipartiteGraph()) {
  {
    std::ifstream in = open_in(dir / "nodes.jsonl");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      ojson j;
      try {
        j = ojson::parse(line);
      } catch (const std::exception& e) {
        throw ParseError("nodes.jsonl:" + std::to_string(lineno) + ": " +
                         e.what());
      }
      const std::string kind = j.value("kind", "");
      const std::uint32_t round = j.value("round", 0u);
      if (kind == "actor") {
        std::string profile;
        if (j.contains("attrs") && j["attrs"].is_object() &&
            j["attrs"].contains("profile"))
          profile = j["attrs"]["profile"].get<std::string>();
        std::uint32_t ord =
            base.add_actor(profile, round, j.value("core", false));
        if (ord != j.value("id", 0u))
          throw ParseError("nodes.jsonl:" + std::to_string(lineno) +
                           ": actor ids must be dense and in order");
      } else if (kind == "item") {
        AttrMap attrs;
        if (j.contains("attrs") && j["attrs"].is_object()) {
          for (auto it = j["attrs"].begin(); it != j["attrs"].end(); ++it)
            attrs.set(it.key(), it.value().get<std::string>());
        }
        std::optional<std::uint32_t> creator;
        if (j.contains("creator") && !j["creator"].is_null())
          creator = j["creator"].get<std::uint32_t>();
        std::uint32_t ord = base.add_item(std::move(attrs), creator, round);
        if (ord != j.value("id", 0u))
          throw ParseError("nodes.jsonl:" + std::to_string(lineno) +
                           ": item ids must be dense and in order");
      } else {
        throw ParseError("nodes.jsonl:" + std::to_string(lineno) +
                         ": unknown node kind '" + kind + "'");
      }
    }
  }
  {
    std::ifstream in = open_in(dir / "edges.tsv");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty() || line[0] == '#') continue;
      std::vector<std::string> cols = split(line, '\t');
      if (cols.size() != 4)
        throw ParseError("edges.tsv:" + std::to_string(lineno) +
                         ": expected 4 tab-separated columns");
      try {
        base.add_edge(static_cast<std::uint32_t>(std::stoul(cols[0])),
                      static_cast<std::uint32_t>(std::stoul(cols[1])),
                      action_kind_from(cols[2]),
                      static_cast<std::uint32_t>(std::stoul(cols[3])));
      } catch (const Error&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError("edges.tsv:" + std::to_string(lineno) + ": " +
                         e.what());
      }
    }
  }
  return base;
}

// Folded graphs serialize as an edge list over the original ordinals with a
// self-describing header. Both endpoints of a MovieRating row keep their
// bipartite id spaces (actor column first).
inline void write_folded_tsv(const FoldedGraph& g,
                             const std::filesystem::path& path,
                             std::optional<std::string> header_override =
                                 std::nullopt) {
  std::ofstream out = open_out(path);
  if (header_override) {
    out << *header_override << "\n";
  } else {
    out << "# fold=" << g.name << " directed=" << (g.directed ? "true" : "false")
        << "\n";
  }
  for (auto [s, t] : g.edges)
    out << g.nodes[s].ordinal << "\t" << g.nodes[t].ordinal << "\n";
}

inline void write_baseline_tsv(const FoldedGraph& g, std::string_view kind,
                               const std::filesystem::path& path) {
  write_folded_tsv(g, path, "# baseline=" + std::string(kind));
}

inline std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in = open_in(p);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// Vocabulary files: UTF-8, one token per line, blank lines ignored.
inline std::vector<std::string> read_vocab_file(
    const std::filesystem::path& p) {
  std::ifstream in = open_in(p);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace gag
