#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gag {

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Lower-cased alphanumeric tokens; everything else separates.
inline std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

template <typename It>
std::string join(It first, It last, std::string_view sep) {
  std::string out;
  for (It it = first; it != last; ++it) {
    if (!out.empty()) out += sep;
    out += *it;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& v,
                        std::string_view sep) {
  return join(v.begin(), v.end(), sep);
}

// Replaces {{slot}} placeholders; unknown slots render empty.
inline std::string fill_template(std::string_view tpl,
                                 const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(tpl.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (i + 1 < tpl.size() && tpl[i] == '{' && tpl[i + 1] == '{') {
      std::size_t close = tpl.find("}}", i + 2);
      if (close != std::string_view::npos) {
        std::string key(tpl.substr(i + 2, close - i - 2));
        auto it = slots.find(trim(key));
        if (it != slots.end()) out += it->second;
        i = close + 2;
        continue;
      }
    }
    out.push_back(tpl[i]);
    ++i;
  }
  return out;
}

inline bool contains_ci(std::string_view haystack, std::string_view needle) {
  std::string h = to_lower(haystack);
  std::string n = to_lower(needle);
  return h.find(n) != std::string::npos;
}

// Case/whitespace/punctuation-insensitive key for title matching.
inline std::string normalized_key(std::string_view s) {
  return join(tokenize(s), " ");
}

}  // namespace gag
