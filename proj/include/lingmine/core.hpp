#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lingmine {

// Configuration / usage problems (bad flags, malformed config or lexicon).
// The CLI maps these to exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Data / validation problems (bad input records, invariant violations).
// The CLI maps these to exit code 2.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Label { OFF, NOT };

inline std::string to_string(Label l) { return l == Label::OFF ? "OFF" : "NOT"; }

inline Label label_from_string(std::string_view s) {
  if (s == "OFF") return Label::OFF;
  if (s == "NOT") return Label::NOT;
  throw data_error("invalid label: '" + std::string(s) + "' (expected OFF or NOT)");
}

enum class Lang { TR, EN };

inline std::string to_string(Lang l) { return l == Lang::TR ? "tr" : "en"; }

inline Lang lang_from_string(std::string_view s) {
  if (s == "tr" || s == "TR") return Lang::TR;
  if (s == "en" || s == "EN") return Lang::EN;
  throw config_error("invalid language: '" + std::string(s) + "' (expected tr or en)");
}

// FNV-1a, used for dedup keys and manifest digests.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace lingmine
