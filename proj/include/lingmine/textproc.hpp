#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lingmine/core.hpp"
#include "lingmine/utf8.hpp"

namespace lingmine {

struct RawDocument {
  std::string id;
  std::string text;
  Lang lang = Lang::TR;
};

struct CleanDocument {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;
  Lang lang = Lang::TR;
};

struct NormalizerConfig {
  bool enabled = false;
  bool squeeze_runs = true;
  std::map<std::string, std::string> replacements;
};

namespace detail {

inline bool is_ws(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0x00A0;
}

inline bool is_emoji(char32_t cp) {
  return (cp >= 0x1F300 && cp <= 0x1F5FF) || (cp >= 0x1F600 && cp <= 0x1F64F) ||
         (cp >= 0x1F680 && cp <= 0x1F6FF) || (cp >= 0x1F900 && cp <= 0x1F9FF) ||
         (cp >= 0x2600 && cp <= 0x26FF) || (cp >= 0x2700 && cp <= 0x27BF);
}

inline bool is_word_char(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') ||
         (cp >= U'0' && cp <= U'9') || cp == U'_' || cp >= 0x80;
}

// Lowercasing for ASCII, Latin-1 and Latin Extended-A, without the dotted/
// dotless I pair which is language dependent.
inline char32_t lower_common(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z' && cp != U'I') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp >= 0x0100 && cp <= 0x0137 && cp % 2 == 0) {
    if (cp == 0x0130) return cp;  // handled per language
    return cp + 1;
  }
  if (cp >= 0x0139 && cp <= 0x0148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x014A && cp <= 0x0177 && cp % 2 == 0) return cp + 1;
  if (cp == 0x0179 || cp == 0x017B || cp == 0x017D) return cp + 1;
  return cp;
}

inline char32_t lower_cp(char32_t cp, Lang lang) {
  if (lang == Lang::TR) {
    if (cp == U'I') return 0x0131;  // I -> dotless i
    if (cp == 0x0130) return U'i';  // dotted I -> i
  } else {
    if (cp == U'I') return U'i';
    if (cp == 0x0130) return U'i';
  }
  return lower_common(cp);
}

inline bool is_match_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'!' && cp <= U'/') || (cp >= U':' && cp <= U'@') ||
           (cp >= U'[' && cp <= U'`') || (cp >= U'{' && cp <= U'~');
  }
  switch (cp) {
    case 0x00AB: case 0x00BB:             // « »
    case 0x2018: case 0x2019:             // ‘ ’
    case 0x201C: case 0x201D:             // “ ”
    case 0x2013: case 0x2014:             // – —
    case 0x2026:                          // …
      return true;
    default:
      return false;
  }
}

inline bool starts_with_ci(const std::vector<char32_t>& tok, std::string_view prefix) {
  if (tok.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char32_t c = tok[i];
    if (c >= U'A' && c <= U'Z') c += 0x20;
    if (c != static_cast<char32_t>(prefix[i])) return false;
  }
  return true;
}

}  // namespace detail

// Cleaning pass: tag removal, URL/mention token removal, emoji removal, then
// language-aware lowercasing and whitespace collapsing. Punctuation survives.
inline CleanDocument clean(const RawDocument& doc) {
  std::vector<char32_t> cps = utf8::decode(doc.text);

  // <...> spans; an unclosed '<' is kept as-is
  std::vector<char32_t> no_tags;
  no_tags.reserve(cps.size());
  for (std::size_t i = 0; i < cps.size();) {
    if (cps[i] == U'<') {
      std::size_t j = i + 1;
      while (j < cps.size() && cps[j] != U'>') ++j;
      if (j < cps.size()) {
        i = j + 1;
        continue;
      }
    }
    no_tags.push_back(cps[i]);
    ++i;
  }

  // token-level removals on whitespace-delimited tokens
  std::vector<std::vector<char32_t>> toks;
  {
    std::vector<char32_t> cur;
    for (char32_t cp : no_tags) {
      if (detail::is_ws(cp)) {
        if (!cur.empty()) toks.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(cp);
      }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
  }

  CleanDocument out;
  out.id = doc.id;
  out.lang = doc.lang;
  for (auto& tok : toks) {
    if (detail::starts_with_ci(tok, "http://") || detail::starts_with_ci(tok, "https://") ||
        detail::starts_with_ci(tok, "www."))
      continue;
    if (tok.size() >= 2 && tok[0] == U'@' && detail::is_word_char(tok[1])) continue;
    std::vector<char32_t> kept;
    kept.reserve(tok.size());
    for (char32_t cp : tok)
      if (!detail::is_emoji(cp)) kept.push_back(detail::lower_cp(cp, doc.lang));
    if (kept.empty()) continue;
    out.tokens.push_back(utf8::encode(kept));
  }
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (i) out.text += ' ';
    out.text += out.tokens[i];
  }
  return out;
}

// Strips leading/trailing punctuation for query matching only; stored text is
// never mutated.
inline std::string match_token(std::string_view token) {
  std::vector<char32_t> cps = utf8::decode(token);
  std::size_t lo = 0, hi = cps.size();
  while (lo < hi && detail::is_match_punct(cps[lo])) ++lo;
  while (hi > lo && detail::is_match_punct(cps[hi - 1])) --hi;
  std::string out;
  for (std::size_t i = lo; i < hi; ++i) utf8::append(out, cps[i]);
  return out;
}

namespace detail {

inline std::string squeeze_token(const std::string& tok) {
  std::vector<char32_t> cps = utf8::decode(tok);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    std::size_t j = i;
    while (j < cps.size() && cps[j] == cps[i]) ++j;
    // runs of >=3 collapse to a single letter
    if (j - i >= 3)
      out.push_back(cps[i]);
    else
      for (std::size_t k = i; k < j; ++k) out.push_back(cps[k]);
    i = j;
  }
  return utf8::encode(out);
}

}  // namespace detail

inline CleanDocument normalize(const CleanDocument& doc, const NormalizerConfig& cfg) {
  if (!cfg.enabled) return doc;
  CleanDocument out;
  out.id = doc.id;
  out.lang = doc.lang;
  for (const std::string& tok : doc.tokens) {
    std::string t = cfg.squeeze_runs ? detail::squeeze_token(tok) : tok;
    auto it = cfg.replacements.find(t);
    if (it != cfg.replacements.end()) t = it->second;
    out.tokens.push_back(t);
  }
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (i) out.text += ' ';
    out.text += out.tokens[i];
  }
  return out;
}

// Lexicon file: one `from<TAB>to` pair per line, '#' comments.
inline std::map<std::string, std::string> load_replacement_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open lexicon file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": expected `from<TAB>to`, got: " + line);
    std::string from = line.substr(0, tab);
    std::string to = line.substr(tab + 1);
    auto has_ws = [](const std::string& s) {
      return s.find_first_of(" \t") != std::string::npos;
    };
    if (has_ws(from) || has_ws(to))
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": lexicon entries must be single tokens: " + line);
    out[from] = to;
  }
  return out;
}

}  // namespace lingmine
