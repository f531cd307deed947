#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gag/core/io.hpp"

namespace gag {

// Word lists behind the deterministic profile and item generators. The
// built-ins keep runs self-contained; any list can be replaced by a
// one-token-per-line UTF-8 file of the same name in a vocab directory
// (data/vocab ships the built-ins in that format).
struct Vocabulary {
  std::vector<std::string> first_names;
  std::vector<std::string> last_names;
  std::vector<std::string> topics;
  std::vector<std::string> expertises;
  std::vector<std::string> institutions;
  std::vector<std::string> countries;
  std::vector<std::string> genres;
  std::vector<std::string> jobs;
  std::vector<std::string> adjectives;
  std::vector<std::string> nouns;
};

inline const Vocabulary& default_vocab() {
  static const Vocabulary v = {
      // first_names
      {"Ada", "Alice", "Amir", "Anika", "Bruno", "Carmen", "Chen", "Dana",
       "Diego", "Elif", "Emma", "Felix", "Grace", "Hana", "Hugo", "Idris",
       "Ines", "Ivan", "Jonas", "Jun", "Kira", "Lars", "Leila", "Liam", "Mei",
       "Milan", "Nadia", "Noor", "Omar", "Priya", "Ravi", "Sofia"},
      // last_names
      {"Abadi", "Becker", "Chen", "Costa", "Dubois", "Eriksen", "Farah",
       "Garcia", "Haddad", "Ibarra", "Jensen", "Kim", "Kowalski", "Laurent",
       "Mbeki", "Moreau", "Nakamura", "Novak", "Okafor", "Olsen", "Park",
       "Petrov", "Quispe", "Rossi", "Sato", "Silva", "Singh", "Tanaka", "Ueda",
       "Vargas", "Weber", "Yilmaz"},
      // topics
      {"graph mining", "community detection", "link prediction",
       "network embedding", "social dynamics", "information diffusion",
       "recommender systems", "matrix factorization", "spectral clustering",
       "random walks", "knowledge graphs", "entity resolution",
       "question answering", "machine translation", "speech recognition",
       "image segmentation", "object detection", "pose estimation",
       "reinforcement learning", "policy gradients", "bandit algorithms",
       "causal inference", "survey sampling", "time series",
       "anomaly detection", "stream processing", "query optimization",
       "data provenance", "federated learning", "differential privacy",
       "secure computation", "program synthesis", "type systems",
       "compiler verification", "model checking", "theorem proving",
       "distributed consensus", "fault tolerance", "load balancing",
       "cache coherence", "quantum circuits", "error correction",
       "protein folding", "gene regulation", "epidemic modeling",
       "climate simulation", "ocean currents", "seismic imaging",
       "materials discovery", "battery chemistry", "robot navigation",
       "motion planning", "swarm coordination", "sensor fusion",
       "signal processing", "wireless networks", "edge computing",
       "hardware accelerators", "numerical methods", "convex optimization"},
      // expertises
      {"algorithm design", "statistical modeling", "systems engineering",
       "data visualization", "experimental design", "software verification",
       "database internals", "network protocols", "high performance computing",
       "human computer interaction", "natural language processing",
       "computer vision", "computational biology", "operations research",
       "information retrieval", "cryptography", "embedded systems",
       "scientific computing", "simulation methods", "graph theory",
       "game theory", "control theory", "signal analysis", "machine learning"},
      // institutions
      {"Aalto University", "ETH Zurich", "Kyoto University", "MIT",
       "National University of Singapore", "Oxford University",
       "Politecnico di Milano", "Seoul National University",
       "Sorbonne University", "Stanford University", "TU Delft",
       "Tsinghua University", "University of Cape Town",
       "University of Sao Paulo", "University of Toronto", "UNAM"},
      // countries
      {"Brazil", "Canada", "China", "Finland", "France", "Germany", "India",
       "Italy", "Japan", "Mexico", "Netherlands", "Singapore", "South Africa",
       "South Korea", "Switzerland", "Turkey"},
      // genres
      {"Action", "Adventure", "Animation", "Comedy", "Crime", "Documentary",
       "Drama", "Fantasy", "Film-Noir", "Horror", "Musical", "Mystery",
       "Romance", "Sci-Fi", "Thriller", "War", "Western", "Biography"},
      // jobs
      {"accountant", "architect", "artist", "chef", "doctor", "engineer",
       "farmer", "journalist", "lawyer", "librarian", "musician", "nurse",
       "photographer", "pilot", "programmer", "researcher", "student",
       "teacher", "translator", "veterinarian"},
      // adjectives
      {"Silent", "Crimson", "Forgotten", "Electric", "Hollow", "Golden",
       "Restless", "Distant", "Broken", "Luminous", "Savage", "Quiet",
       "Burning", "Frozen", "Endless", "Hidden", "Wandering", "Fearless",
       "Midnight", "Paper"},
      // nouns
      {"Harbor", "Orchard", "Letter", "Empire", "Garden", "Signal", "Mirror",
       "Voyage", "Archive", "Tide", "Lantern", "Meadow", "Crossing", "Summit",
       "Cipher", "Station", "Canyon", "Relic", "Horizon", "Parade", "Atlas",
       "Furnace", "Island", "Compass"},
  };
  return v;
}

// Overrides the built-ins with any <list>.txt found under dir. Missing files
// keep the default list; an empty file is a config error.
inline Vocabulary load_vocab_dir(const std::filesystem::path& dir) {
  Vocabulary v = default_vocab();
  auto maybe = [&dir](std::vector<std::string>& list, const char* stem) {
    std::filesystem::path p = dir / (std::string(stem) + ".txt");
    if (!std::filesystem::exists(p)) return;
    std::vector<std::string> loaded = read_vocab_file(p);
    if (loaded.empty()) throw ConfigError("empty vocabulary file: " + p.string());
    list = std::move(loaded);
  };
  maybe(v.first_names, "first_names");
  maybe(v.last_names, "last_names");
  maybe(v.topics, "topics");
  maybe(v.expertises, "expertises");
  maybe(v.institutions, "institutions");
  maybe(v.countries, "countries");
  maybe(v.genres, "genres");
  maybe(v.jobs, "jobs");
  maybe(v.adjectives, "adjectives");
  maybe(v.nouns, "nouns");
  return v;
}

}  // namespace gag
