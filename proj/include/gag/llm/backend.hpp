#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
// httplib pulls in <resolv.h>, whose BIND-era `_res` macro breaks any
// later header using `_res` as an identifier (Eigen does).
#ifdef _res
#undef _res
#endif
#include <nlohmann/json.hpp>

#include "gag/agent/profile.hpp"
#include "gag/agent/vocab.hpp"
#include "gag/core/io.hpp"
#include "gag/core/types.hpp"
#include "gag/srag/embed.hpp"
#include "gag/util/hash.hpp"
#include "gag/util/rng.hpp"
#include "gag/util/text.hpp"

namespace gag {

// One recorded chat call. prompt_hash keys replay lookup; latency is
// informational and never feeds back into the run.
struct ChatExchange {
  std::string prompt_hash;
  std::string system;
  std::string user;
  std::string response;
  std::uint64_t latency_ms = 0;
};

inline std::string chat_prompt_hash(std::string_view system,
                                    std::string_view user) {
  std::uint64_t h = fnv1a(system);
  h = fnv1a("\x1f", h);
  h = fnv1a(user, h);
  return hex64(h);
}

// Chat + embedding provider. chat() wraps the transport, records every
// exchange under a mutex, and is safe to call from several workers at once;
// implementations must tolerate concurrent in-flight calls.
class Backend {
 public:
  virtual ~Backend() = default;

  std::string chat(const std::string& system, const std::string& user) {
    auto t0 = std::chrono::steady_clock::now();
    std::string response = chat_impl(system, user);
    auto t1 = std::chrono::steady_clock::now();
    ChatExchange ex;
    ex.prompt_hash = chat_prompt_hash(system, user);
    ex.system = system;
    ex.user = user;
    ex.response = response;
    ex.latency_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
            .count());
    {
      std::lock_guard lock(mutex_);
      exchanges_.push_back(std::move(ex));
    }
    return response;
  }

  // Unit-normalized embeddings, one row per input text.
  virtual std::vector<std::vector<float>> embed(
      const std::vector<std::string>& texts) = 0;
  virtual std::size_t embed_dim() = 0;

  std::vector<ChatExchange> exchanges() const {
    std::lock_guard lock(mutex_);
    return exchanges_;
  }

  std::size_t exchange_count() const {
    std::lock_guard lock(mutex_);
    return exchanges_.size();
  }

 protected:
  virtual std::string chat_impl(const std::string& system,
                                const std::string& user) = 0;

 private:
  mutable std::mutex mutex_;
  std::vector<ChatExchange> exchanges_;
};

inline void write_exchanges_jsonl(const std::vector<ChatExchange>& exchanges,
                                  const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const ChatExchange& ex : exchanges) {
    nlohmann::json j;
    j["prompt_hash"] = ex.prompt_hash;
    j["system"] = ex.system;
    j["user"] = ex.user;
    j["response"] = ex.response;
    j["latency_ms"] = ex.latency_ms;
    out << j.dump() << '\n';
  }
}

inline std::vector<ChatExchange> read_exchanges_jsonl(
    const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<ChatExchange> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": not a JSON object");
    ChatExchange ex;
    ex.prompt_hash = j.value("prompt_hash", std::string());
    ex.system = j.value("system", std::string());
    ex.user = j.value("user", std::string());
    ex.response = j.value("response", std::string());
    ex.latency_ms = j.value("latency_ms", std::uint64_t{0});
    if (ex.prompt_hash.empty())
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": missing prompt_hash");
    out.push_back(std::move(ex));
  }
  return out;
}

namespace detail {

// Tokens of every "- ..." bullet line, ranked (count desc, token asc).
inline std::vector<std::pair<std::string, std::size_t>> bullet_token_counts(
    const std::string& prompt) {
  std::map<std::string, std::size_t> counts;
  for (const std::string& line : split(prompt, '\n')) {
    std::string t = trim(line);
    if (t.rfind("- ", 0) != 0) continue;
    for (const std::string& tok : tokenize(t.substr(2)))
      if (!is_stopword(tok)) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(),
                                                          counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a,
                                                    const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranked;
}

// Values of "<label> <value>" lines, in prompt order.
inline std::vector<std::string> prompt_line_values(const std::string& prompt,
                                                   std::string_view label) {
  std::vector<std::string> out;
  for (const std::string& line : split(prompt, '\n')) {
    std::string t = trim(line);
    if (t.size() > label.size() &&
        std::string_view(t).substr(0, label.size()) == label)
      out.push_back(trim(t.substr(label.size())));
  }
  return out;
}

// First integer following `marker`, or fallback.
inline std::size_t parse_count_after(const std::string& prompt,
                                     std::string_view marker,
                                     std::size_t fallback) {
  std::size_t pos = prompt.find(marker);
  if (pos == std::string::npos) return fallback;
  pos += marker.size();
  std::size_t end = pos;
  while (end < prompt.size() && std::isdigit(static_cast<unsigned char>(
                                    prompt[end])))
    ++end;
  if (end == pos) return fallback;
  return static_cast<std::size_t>(std::stoull(prompt.substr(pos, end - pos)));
}

}  // namespace detail

// Stand-in chat model. Makes no network calls; every reply is a pure
// function of (seed, prompt hash), so identical prompts always get
// identical replies and the generator is reentrant.
class MockBackend final : public Backend {
 public:
  explicit MockBackend(std::uint64_t seed, std::size_t dim = kDefaultEmbedDim)
      : seed_(seed), encoder_(dim) {}

  std::vector<std::vector<float>> embed(
      const std::vector<std::string>& texts) override {
    std::vector<std::vector<float>> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(encoder_.encode(t));
    return out;
  }

  std::size_t embed_dim() override { return encoder_.dim(); }

 protected:
  std::string chat_impl(const std::string& system,
                        const std::string& user) override {
    std::uint64_t h = fnv1a(chat_prompt_hash(system, user));
    Rng rng = derive_rng(seed_, h);
    const std::string prompt = system + "\n" + user;

    if (prompt.find("active or idle") != std::string::npos)
      return activation(prompt, rng);
    if (prompt.find("bracketed list of records") != std::string::npos)
      return record_list(prompt, rng);
    if (prompt.find("bracketed list of strings") != std::string::npos)
      return query_list(prompt, rng);
    if (prompt.find("\"summary\"") != std::string::npos)
      return reflection(prompt);
    if (prompt.find("\"citations\"") != std::string::npos)
      return paper_action(prompt, rng, h);
    if (prompt.find("\"ratings\"") != std::string::npos)
      return rating_action(prompt, rng);
    if (prompt.find("\"actions\"") != std::string::npos)
      return tweet_action(prompt, rng);
    return "[]";
  }

 private:
  std::string activation(const std::string& prompt, Rng& rng) const {
    bool core = prompt.find("Label: core") != std::string::npos;
    return rng.bernoulli(core ? 0.8 : 0.2) ? "active" : "idle";
  }

  std::vector<std::string> profile_topics(const std::string& prompt,
                                          Rng& rng) const {
    const Vocabulary& v = default_vocab();
    for (std::string_view label : {"Topics:", "Genres:"}) {
      std::vector<std::string> lines = detail::prompt_line_values(prompt, label);
      if (lines.empty()) continue;
      std::vector<std::string> topics;
      for (std::string& part : split(lines.front(), ';')) {
        std::string t = trim(part);
        if (!t.empty()) topics.push_back(std::move(t));
      }
      if (!topics.empty()) return topics;
    }
    return {detail::pick(v.topics, rng), detail::pick(v.topics, rng)};
  }

  std::string query_list(const std::string& prompt, Rng& rng) const {
    std::vector<std::string> topics = profile_topics(prompt, rng);
    if (topics.size() > 3) topics.resize(3);
    return nlohmann::json(topics).dump();
  }

  std::string reflection(const std::string& prompt) const {
    auto ranked = detail::bullet_token_counts(prompt);
    if (ranked.size() > 3) ranked.resize(3);
    std::vector<std::string> keywords, parts;
    for (const auto& [tok, count] : ranked) {
      keywords.push_back(tok);
      parts.push_back(tok + ":" + std::to_string(count));
    }
    nlohmann::json j;
    j["summary"] = join(parts, "; ");
    j["keywords"] = keywords;
    return j.dump();
  }

  std::string record_list(const std::string& prompt, Rng& rng) const {
    const Vocabulary& v = default_vocab();
    std::size_t count = detail::parse_count_after(prompt, "list of ", 5);
    nlohmann::json arr = nlohmann::json::array();
    std::vector<std::string> used_titles;
    for (std::size_t i = 0; i < count; ++i) {
      nlohmann::json rec;
      if (prompt.find("different authors") != std::string::npos) {
        rec["name"] = detail::pick(v.first_names, rng) + " " +
                      detail::pick(v.last_names, rng);
        rec["expertises"] = detail::pick_distinct(v.expertises, 2, rng);
        rec["institution"] = detail::pick(v.institutions, rng);
        rec["country"] = detail::pick(v.countries, rng);
        rec["topics"] = detail::pick_distinct(v.topics, 2 + static_cast<std::uint32_t>(rng.below(2)), rng);
      } else if (prompt.find("watcher profiles") != std::string::npos) {
        rec["name"] = detail::pick(v.first_names, rng) + " " +
                      detail::pick(v.last_names, rng);
        rec["gender"] = rng.bernoulli(0.5) ? "F" : "M";
        rec["age"] = std::to_string(18 + rng.below(50));
        rec["job"] = detail::pick(v.jobs, rng);
        rec["genres"] = detail::pick_distinct(v.genres, 2 + static_cast<std::uint32_t>(rng.below(2)), rng);
      } else if (prompt.find("twitter users") != std::string::npos) {
        std::vector<std::string> topics =
            detail::pick_distinct(v.topics, 2 + static_cast<std::uint32_t>(rng.below(2)), rng);
        rec["name"] = detail::pick(v.first_names, rng) + " " +
                      detail::pick(v.last_names, rng);
        rec["description"] = "Tweets about " + topics[0] + " and " +
                             topics[1] + ". " +
                             detail::capitalize(detail::pick(v.jobs, rng)) +
                             " by day.";
        rec["topics"] = topics;
      } else if (prompt.find("papers with") != std::string::npos) {
        std::string t1 = detail::pick(v.topics, rng);
        std::string t2 = detail::pick(v.topics, rng);
        rec["title"] = detail::capitalize(t1) + " and " + t2 + ": a survey (s" +
                       std::to_string(i) + ")";
        rec["topic"] = t1;
        rec["abstract"] =
            "We review " + t1 + " with applications to " + t2 + ".";
      } else if (prompt.find("movies with") != std::string::npos) {
        std::string title = "The " + detail::pick(v.adjectives, rng) + " " +
                            detail::pick(v.nouns, rng);
        if (std::find(used_titles.begin(), used_titles.end(), title) !=
            used_titles.end())
          title += " (s" + std::to_string(i) + ")";
        used_titles.push_back(title);
        std::vector<std::string> genres =
            detail::pick_distinct(v.genres, 2, rng);
        rec["title"] = title;
        rec["genres"] = join(genres, "; ");
        rec["content"] = "A " + to_lower(genres[0]) + " story about " +
                         to_lower(detail::pick(v.nouns, rng)) + ".";
      } else if (prompt.find("tweets with") != std::string::npos) {
        std::vector<std::string> topics =
            detail::pick_distinct(v.topics, 2, rng);
        rec["tweet_id"] = "t.seed." + std::to_string(i);
        rec["user"] = detail::pick(v.first_names, rng) + " " +
                      detail::pick(v.last_names, rng);
        rec["tweet"] =
            "Talking about " + topics[0] + " and " + topics[1] + " today.";
      } else {
        std::vector<std::string> topics =
            detail::pick_distinct(v.topics, 2, rng);
        rec["name"] = detail::pick(v.first_names, rng) + " " +
                      detail::pick(v.last_names, rng);
        rec["description"] = "Interested in " + topics[0] + ".";
        rec["topics"] = topics;
      }
      arr.push_back(std::move(rec));
    }
    return arr.dump();
  }

  std::string paper_action(const std::string& prompt, Rng& rng,
                           std::uint64_t h) const {
    std::vector<std::string> topics = profile_topics(prompt, rng);
    std::vector<std::string> observed =
        detail::prompt_line_values(prompt, "Title:");
    std::vector<std::string> cites;
    for (const std::string& t : observed)
      if (rng.bernoulli(0.3)) cites.push_back(t);
    if (cites.empty() && !observed.empty()) cites.push_back(observed.front());
    nlohmann::json j;
    std::string t1 = topics.empty() ? "general methods" : topics[0];
    std::string t2 = topics.size() > 1 ? topics[1] : t1;
    j["title"] = detail::capitalize(t1) + " meets " + t2 + " (" +
                 hex64(h).substr(0, 8) + ")";
    if (topics.size() > 3) topics.resize(3);
    j["keywords"] = topics;
    j["abstract"] = "We study " + t1 + " through the lens of " + t2 + ".";
    j["citations"] = cites;
    return j.dump();
  }

  std::string rating_action(const std::string& prompt, Rng& rng) const {
    std::vector<std::string> observed =
        detail::prompt_line_values(prompt, "Title:");
    nlohmann::json ratings = nlohmann::json::array();
    for (const std::string& t : observed) {
      if (!rng.bernoulli(0.3)) continue;
      ratings.push_back({{"title", t},
                         {"score", 1 + rng.below(5)}});
    }
    if (ratings.empty() && !observed.empty())
      ratings.push_back({{"title", observed.front()},
                         {"score", 1 + rng.below(5)}});
    nlohmann::json j;
    j["ratings"] = std::move(ratings);
    return j.dump();
  }

  std::string tweet_action(const std::string& prompt, Rng& rng) const {
    std::vector<std::string> topics = profile_topics(prompt, rng);
    std::vector<std::string> observed =
        detail::prompt_line_values(prompt, "Tweet ID:");
    bool post = rng.bernoulli(0.6);
    nlohmann::json actions = nlohmann::json::array();
    for (const std::string& id : observed) {
      double u = rng.real01();
      if (u < 0.15)
        actions.push_back({{"type", "retweet"}, {"target", id}});
      else if (u < 0.30)
        actions.push_back({{"type", "reply"}, {"target", id}});
      else if (u < 0.55)
        actions.push_back({{"type", "follow"}, {"target", id}});
    }
    if (actions.empty() && !observed.empty())
      actions.push_back({{"type", "follow"}, {"target", observed.front()}});
    nlohmann::json j;
    std::string t1 = topics.empty() ? "the weather" : topics[0];
    std::string t2 = topics.size() > 1 ? topics[1] : t1;
    j["tweet"] = post ? "Talking about " + t1 + " and " + t2 + " today." : "";
    if (topics.size() > 2) topics.resize(2);
    j["topics"] = topics;
    j["actions"] = std::move(actions);
    return j.dump();
  }

  std::uint64_t seed_;
  HashingEncoder encoder_;
};

// OpenAI-compatible HTTP backend. Key comes from GAG_API_KEY; GAG_API_BASE
// overrides the configured base URL. 5xx and timeouts retry with exponential
// backoff; 4xx fails immediately with the status code.
struct RemoteConfig {
  std::string base_url;
  std::string model_name;
  std::string embed_model_name;
  std::uint32_t timeout_ms = 30000;
  std::uint32_t max_retries = 2;
  std::uint32_t backoff_ms = 100;  // doubles per retry
};

class RemoteBackend final : public Backend {
 public:
  explicit RemoteBackend(RemoteConfig config) : config_(std::move(config)) {
    if (const char* base = std::getenv("GAG_API_BASE"); base && *base)
      config_.base_url = base;
    const char* key = std::getenv("GAG_API_KEY");
    if (!key || !*key)
      throw MissingApiKey("set GAG_API_KEY to use a remote backend");
    api_key_ = key;
    split_base_url();
  }

  std::vector<std::vector<float>> embed(
      const std::vector<std::string>& texts) override {
    nlohmann::json body;
    body["model"] = config_.embed_model_name;
    body["input"] = texts;
    nlohmann::json reply = post_json("/embeddings", body);
    if (!reply.contains("data") || !reply["data"].is_array() ||
        reply["data"].size() != texts.size())
      throw BackendError("embeddings reply missing data rows");
    std::vector<std::vector<float>> out(texts.size());
    for (const nlohmann::json& row : reply["data"]) {
      std::size_t index = row.value("index", out.size());
      if (index >= out.size() || !row.contains("embedding"))
        throw BackendError("embeddings reply has bad row index");
      std::vector<double> vec = row["embedding"].get<std::vector<double>>();
      double norm2 = 0.0;
      for (double x : vec) norm2 += x * x;
      double norm = std::sqrt(norm2);
      if (norm <= 0.0) throw EncoderError("remote embedding has zero norm");
      std::vector<float> unit(vec.size());
      for (std::size_t i = 0; i < vec.size(); ++i)
        unit[i] = static_cast<float>(vec[i] / norm);
      out[index] = std::move(unit);
    }
    std::lock_guard lock(dim_mutex_);
    if (dim_ == 0) dim_ = out.front().size();
    for (const auto& row : out)
      if (row.size() != dim_)
        throw EncoderError("remote embedding dimension changed mid-run");
    return out;
  }

  std::size_t embed_dim() override {
    {
      std::lock_guard lock(dim_mutex_);
      if (dim_ != 0) return dim_;
    }
    embed({"dimension probe"});
    std::lock_guard lock(dim_mutex_);
    return dim_;
  }

 protected:
  std::string chat_impl(const std::string& system,
                        const std::string& user) override {
    nlohmann::json body;
    body["model"] = config_.model_name;
    body["messages"] = {{{"role", "system"}, {"content", system}},
                        {{"role", "user"}, {"content", user}}};
    nlohmann::json reply = post_json("/chat/completions", body);
    if (!reply.contains("choices") || reply["choices"].empty())
      throw BackendError("chat reply has no choices");
    const nlohmann::json& msg = reply["choices"][0];
    if (msg.contains("message") && msg["message"].contains("content"))
      return msg["message"]["content"].get<std::string>();
    throw BackendError("chat reply has no message content");
  }

 private:
  void split_base_url() {
    // scheme://host[:port][/prefix] -> client root + path prefix
    std::string url = config_.base_url;
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
      throw ConfigError("base_url needs a scheme: " + url);
    std::size_t path = url.find('/', scheme + 3);
    if (path == std::string::npos) {
      root_ = url;
    } else {
      root_ = url.substr(0, path);
      prefix_ = url.substr(path);
      while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }
  }

  nlohmann::json post_json(const std::string& endpoint,
                           const nlohmann::json& body) {
    const std::string payload = body.dump();
    std::string last_error;
    for (std::uint32_t attempt = 0; attempt <= config_.max_retries;
         ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(
            config_.backoff_ms << (attempt - 1)));
      httplib::Client client(root_);
      const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
      client.set_connection_timeout(timeout);
      client.set_read_timeout(timeout);
      client.set_write_timeout(timeout);
      client.set_bearer_token_auth(api_key_);
      httplib::Result res =
          client.Post(prefix_ + endpoint, payload, "application/json");
      if (!res) {
        bool timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                         res.error() == httplib::Error::Read ||
                         res.error() == httplib::Error::Write;
        last_error = httplib::to_string(res.error());
        if (config_.max_retries == 0 && timed_out)
          throw Timeout(endpoint + ": " + last_error);
        continue;
      }
      if (res->status >= 200 && res->status < 300) {
        nlohmann::json reply =
            nlohmann::json::parse(res->body, nullptr, false);
        if (reply.is_discarded())
          throw BackendError(endpoint + ": reply is not JSON");
        return reply;
      }
      if (res->status >= 400 && res->status < 500)
        throw HttpStatus(res->status, endpoint);
      last_error = "HTTP " + std::to_string(res->status);
      if (config_.max_retries == 0) throw HttpStatus(res->status, endpoint);
    }
    throw RetriesExhausted(endpoint + " after " +
                           std::to_string(config_.max_retries + 1) +
                           " attempts (last: " + last_error + ")");
  }

  RemoteConfig config_;
  std::string api_key_;
  std::string root_;    // scheme://host:port
  std::string prefix_;  // optional path prefix, no trailing slash
  std::mutex dim_mutex_;
  std::size_t dim_ = 0;
};

// Replays recorded chat responses FIFO per prompt hash; embeddings are
// recomputed with the hashing encoder, matching what a mock session used.
class ReplayBackend final : public Backend {
 public:
  ReplayBackend(const std::filesystem::path& path,
                std::size_t dim = kDefaultEmbedDim)
      : encoder_(dim), path_(path.string()) {
    for (ChatExchange& ex : read_exchanges_jsonl(path))
      queues_[ex.prompt_hash].push_back(std::move(ex.response));
  }

  std::vector<std::vector<float>> embed(
      const std::vector<std::string>& texts) override {
    std::vector<std::vector<float>> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(encoder_.encode(t));
    return out;
  }

  std::size_t embed_dim() override { return encoder_.dim(); }

 protected:
  std::string chat_impl(const std::string& system,
                        const std::string& user) override {
    const std::string hash = chat_prompt_hash(system, user);
    std::lock_guard lock(mutex_);
    auto it = queues_.find(hash);
    if (it == queues_.end() || it->second.empty())
      throw BackendError("no recorded response for prompt " + hash + " in " +
                         path_);
    std::string response = std::move(it->second.front());
    it->second.pop_front();
    return response;
  }

 private:
  HashingEncoder encoder_;
  std::string path_;
  std::mutex mutex_;
  std::map<std::string, std::deque<std::string>> queues_;
};

struct BackendConfig {
  enum class Kind { Mock, Remote, Replay };
  Kind kind = Kind::Mock;
  std::uint64_t seed = 0;  // mock reply stream
  RemoteConfig remote;
  std::string replay_path;
};

inline BackendConfig::Kind backend_kind_from(std::string_view name) {
  if (name == "mock") return BackendConfig::Kind::Mock;
  if (name == "remote") return BackendConfig::Kind::Remote;
  if (name == "replay") return BackendConfig::Kind::Replay;
  throw ConfigError("unknown backend kind: " + std::string(name));
}

inline std::string_view to_string(BackendConfig::Kind kind) {
  switch (kind) {
    case BackendConfig::Kind::Mock: return "mock";
    case BackendConfig::Kind::Remote: return "remote";
    case BackendConfig::Kind::Replay: return "replay";
  }
  return "mock";
}

inline std::unique_ptr<Backend> make_backend(const BackendConfig& config,
                                             std::size_t embed_dim) {
  switch (config.kind) {
    case BackendConfig::Kind::Mock:
      return std::make_unique<MockBackend>(config.seed, embed_dim);
    case BackendConfig::Kind::Remote:
      return std::make_unique<RemoteBackend>(config.remote);
    case BackendConfig::Kind::Replay:
      if (config.replay_path.empty())
        throw ConfigError("replay backend needs a recorded exchanges file");
      return std::make_unique<ReplayBackend>(config.replay_path, embed_dim);
  }
  throw ConfigError("unknown backend kind");
}

// Encoder view over a backend's embedding endpoint.
class BackendEncoder final : public Encoder {
 public:
  explicit BackendEncoder(Backend& backend)
      : backend_(&backend), dim_(backend.embed_dim()) {
    if (dim_ == 0) throw EncoderError("backend reports zero embedding dim");
  }

  std::size_t dim() const override { return dim_; }

  std::vector<float> encode(std::string_view text) const override {
    std::vector<std::vector<float>> rows =
        backend_->embed({std::string(text)});
    if (rows.size() != 1 || rows[0].size() != dim_)
      throw EncoderError("backend embedding has wrong shape");
    return std::move(rows[0]);
  }

 private:
  Backend* backend_;
  std::size_t dim_;
};

}  // namespace gag
