#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gag/core/types.hpp"
#include "gag/util/hash.hpp"
#include "gag/util/text.hpp"

namespace gag {

inline constexpr std::size_t kDefaultEmbedDim = 384;

// Text-to-unit-vector contract shared by the hashing encoder and any
// backend-served embedding model. encode must be deterministic per text.
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual std::size_t dim() const = 0;
  virtual std::vector<float> encode(std::string_view text) const = 0;
};

// Signed feature hashing over the token bag: bucket = hash % d, sign from an
// independent hash bit, then L2-normalize. Order-insensitive ("a b" == "b a"),
// collision-tolerant, and needs no model weights. Token-free text maps to the
// first basis vector so the unit-norm contract holds everywhere.
class HashingEncoder final : public Encoder {
 public:
  explicit HashingEncoder(std::size_t dim = kDefaultEmbedDim) : dim_(dim) {
    if (dim_ == 0) throw InvalidParams("embed_dim must be positive");
  }

  std::size_t dim() const override { return dim_; }

  std::vector<float> encode(std::string_view text) const override {
    std::vector<double> acc(dim_, 0.0);
    bool any = false;
    for (const std::string& token : tokenize(text)) {
      std::uint64_t h = fnv1a(token);
      std::size_t bucket = static_cast<std::size_t>(h % dim_);
      double sign = ((h >> 32) & 1u) ? 1.0 : -1.0;
      acc[bucket] += sign;
      any = true;
    }
    if (!any) acc[0] = 1.0;
    double norm2 = 0.0;
    for (double x : acc) norm2 += x * x;
    double inv = 1.0 / std::sqrt(norm2);
    std::vector<float> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      out[i] = static_cast<float>(acc[i] * inv);
    return out;
  }

 private:
  std::size_t dim_;
};

// Cosine similarity of two unit vectors; accumulated in double so rankings
// are reproducible bit-for-bit across builds.
inline double unit_cosine(const float* a, const float* b, std::size_t dim) {
  double dot = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return dot;
}

}  // namespace gag
