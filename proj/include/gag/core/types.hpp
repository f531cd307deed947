#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gag {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GAG_ERROR_TYPE(Name)                          \
  class Name : public Error {                         \
   public:                                            \
    explicit Name(const std::string& what)            \
        : Error(std::string(#Name) + ": " + what) {}  \
  }

GAG_ERROR_TYPE(MissingRequiredAttr);
GAG_ERROR_TYPE(UnknownActionKind);
GAG_ERROR_TYPE(DanglingEndpoint);
GAG_ERROR_TYPE(ParseError);
GAG_ERROR_TYPE(UnknownScenario);
GAG_ERROR_TYPE(SpecScenarioMismatch);
GAG_ERROR_TYPE(BadSeedSpec);
GAG_ERROR_TYPE(ConfigError);
GAG_ERROR_TYPE(BackendError);
GAG_ERROR_TYPE(Timeout);
GAG_ERROR_TYPE(RetriesExhausted);
GAG_ERROR_TYPE(MissingApiKey);
GAG_ERROR_TYPE(EncoderError);
GAG_ERROR_TYPE(DegenerateSeries);
GAG_ERROR_TYPE(InsufficientTail);
GAG_ERROR_TYPE(IoError);
GAG_ERROR_TYPE(InvalidParams);
GAG_ERROR_TYPE(BaselineZeroClustering);
GAG_ERROR_TYPE(DegenerateDegrees);
GAG_ERROR_TYPE(NoConnectedPairs);

#undef GAG_ERROR_TYPE

// Non-retryable HTTP failure; carries the status code for callers that
// branch on it (4xx fails fast, 5xx is retried upstream).
class HttpStatus : public Error {
 public:
  explicit HttpStatus(int code, const std::string& what = {})
      : Error("HttpStatus " + std::to_string(code) +
              (what.empty() ? std::string() : ": " + what)),
        code_(code) {}
  int code() const { return code_; }

 private:
  int code_ = 0;
};

enum class NodeKind : std::uint8_t { Actor, Item, Both };

enum class ActionKind : std::uint8_t {
  Creation,
  Citation,
  Rating,
  Tweet,
  Retweet,
  Reply,
  Follow,
};

inline constexpr int kActionKindCount = 7;

constexpr std::string_view to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Creation: return "Creation";
    case ActionKind::Citation: return "Citation";
    case ActionKind::Rating: return "Rating";
    case ActionKind::Tweet: return "Tweet";
    case ActionKind::Retweet: return "Retweet";
    case ActionKind::Reply: return "Reply";
    case ActionKind::Follow: return "Follow";
  }
  return "?";
}

inline ActionKind action_kind_from(std::string_view s) {
  for (int i = 0; i < kActionKindCount; ++i) {
    auto k = static_cast<ActionKind>(i);
    if (s == to_string(k)) return k;
  }
  throw UnknownActionKind(std::string(s));
}

enum class FoldName : std::uint8_t {
  PaperCitation,
  BibCoupling,
  CoCitation,
  AuthorCitation,
  CoAuthorship,
  MovieRating,
  UserProjection,
  Action,
  Follow,
  Friend,
};

inline constexpr int kFoldNameCount = 10;

constexpr std::string_view to_string(FoldName f) {
  switch (f) {
    case FoldName::PaperCitation: return "PaperCitation";
    case FoldName::BibCoupling: return "BibCoupling";
    case FoldName::CoCitation: return "CoCitation";
    case FoldName::AuthorCitation: return "AuthorCitation";
    case FoldName::CoAuthorship: return "CoAuthorship";
    case FoldName::MovieRating: return "MovieRating";
    case FoldName::UserProjection: return "UserProjection";
    case FoldName::Action: return "Action";
    case FoldName::Follow: return "Follow";
    case FoldName::Friend: return "Friend";
  }
  return "?";
}

inline FoldName fold_name_from(std::string_view s) {
  for (int i = 0; i < kFoldNameCount; ++i) {
    auto f = static_cast<FoldName>(i);
    if (s == to_string(f)) return f;
  }
  throw ParseError("unknown fold name: " + std::string(s));
}

// Node reference: kind + ordinal within that kind. Ordinals are dense,
// assigned in insertion order, and never reused.
struct NodeId {
  NodeKind kind = NodeKind::Actor;
  std::uint32_t ordinal = 0;

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline NodeId actor_id(std::uint32_t ordinal) {
  return {NodeKind::Actor, ordinal};
}
inline NodeId item_id(std::uint32_t ordinal) { return {NodeKind::Item, ordinal}; }

}  // namespace gag
