#pragma once

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "lingmine/core.hpp"
#include "lingmine/querygen.hpp"
#include "lingmine/textproc.hpp"

namespace lingmine {

// Matching modes for TURKISH_SUFFIXED queries, OR-combined.
struct MatchConfig {
  bool bigram = true;       // swear immediately followed by entity form
  bool compound = false;    // swear⧺entity fused into one token
  bool window = false;      // both terms within k consecutive tokens, any order
  int window_k = 2;

  void validate() const {
    if (window && window_k < 2) throw config_error("match window k must be >= 2");
    if (!bigram && !compound && !window)
      throw config_error("at least one turkish match mode must be enabled");
  }

  static MatchConfig defaults() {
    MatchConfig cfg;
    cfg.bigram = true;
    cfg.compound = true;
    return cfg;
  }
};

struct MinedRecord {
  CleanDocument doc;
  std::string query_id;
  QueryPattern pattern = QueryPattern::OW_ONLY;
  // label is fixed "OFF" by construction
};

namespace miner_detail {

inline std::vector<std::string> match_tokens(const CleanDocument& doc) {
  std::vector<std::string> out;
  out.reserve(doc.tokens.size());
  for (const std::string& tok : doc.tokens) {
    std::string bare = match_token(tok);
    if (!bare.empty()) out.push_back(std::move(bare));
  }
  return out;
}

inline bool contains(const std::vector<std::string>& t, const std::string& s) {
  return std::find(t.begin(), t.end(), s) != t.end();
}

}  // namespace miner_detail

inline bool match(const CleanDocument& doc, const Query& q, const MatchConfig& cfg) {
  const std::vector<std::string> t = miner_detail::match_tokens(doc);
  const std::size_t n = t.size();
  switch (q.pattern) {
    case QueryPattern::STRICT_ORDER:
      for (std::size_t i = 0; i + 2 < n; ++i)
        if (t[i] == q.ow && t[i + 1] == q.pronoun && t[i + 2] == q.entity_form) return true;
      return false;
    case QueryPattern::LOOSE_ORDER: {
      if (!miner_detail::contains(t, q.ow)) return false;
      for (std::size_t j = 0; j + 1 < n; ++j)
        if (t[j] == q.pronoun && t[j + 1] == q.entity_form) return true;
      return false;
    }
    case QueryPattern::NO_PRONOUN:
      return miner_detail::contains(t, q.ow) && miner_detail::contains(t, q.entity_form);
    case QueryPattern::OW_ONLY:
      return miner_detail::contains(t, q.ow);
    case QueryPattern::TURKISH_SUFFIXED: {
      if (cfg.bigram) {
        for (std::size_t i = 0; i + 1 < n; ++i)
          if (t[i] == q.ow && t[i + 1] == q.entity_form) return true;
      }
      if (cfg.compound) {
        const std::string fused = q.ow + q.entity_form;
        if (miner_detail::contains(t, fused)) return true;
      }
      if (cfg.window) {
        std::vector<std::size_t> ow_pos, ent_pos;
        for (std::size_t i = 0; i < n; ++i) {
          if (t[i] == q.ow) ow_pos.push_back(i);
          if (t[i] == q.entity_form) ent_pos.push_back(i);
        }
        for (std::size_t a : ow_pos)
          for (std::size_t b : ent_pos) {
            std::size_t lo = std::min(a, b), hi = std::max(a, b);
            if (a != b && hi - lo + 1 <= static_cast<std::size_t>(cfg.window_k)) return true;
          }
      }
      return false;
    }
  }
  return false;
}

// One record per matching document, attributed to the first matching query by
// sorted id; output ordered by document id.
inline std::vector<MinedRecord> mine(const std::vector<CleanDocument>& corpus,
                                     std::vector<Query> queries, const MatchConfig& cfg) {
  if (queries.empty()) throw data_error("mine: empty query set");
  cfg.validate();
  std::sort(queries.begin(), queries.end(),
            [](const Query& a, const Query& b) { return a.id < b.id; });
  std::vector<MinedRecord> out;
  for (const CleanDocument& doc : corpus) {
    for (const Query& q : queries) {
      if (match(doc, q, cfg)) {
        out.push_back({doc, q.id, q.pattern});
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MinedRecord& a, const MinedRecord& b) { return a.doc.id < b.doc.id; });
  return out;
}

// Normalized-text hash used to drop duplicates and train/test contamination:
// lowercase, strip punctuation, collapse whitespace, hash.
inline std::uint64_t dedup_key(std::string_view text) {
  std::vector<char32_t> cps = utf8::decode(text);
  std::string norm;
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (detail::is_ws(cp)) {
      pending_space = !norm.empty();
      continue;
    }
    if (detail::is_match_punct(cp)) continue;
    if (pending_space) {
      norm += ' ';
      pending_space = false;
    }
    utf8::append(norm, detail::lower_cp(cp, Lang::TR));
  }
  return fnv1a64(norm);
}

inline std::vector<MinedRecord> dedup(const std::vector<MinedRecord>& records,
                                      const std::vector<std::uint64_t>& existing_keys) {
  std::unordered_set<std::uint64_t> seen(existing_keys.begin(), existing_keys.end());
  std::vector<MinedRecord> out;
  for (const MinedRecord& r : records)
    if (seen.insert(dedup_key(r.doc.text)).second) out.push_back(r);
  return out;
}

}  // namespace lingmine
