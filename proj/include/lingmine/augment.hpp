#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "lingmine/core.hpp"
#include "lingmine/miner.hpp"
#include "lingmine/rng.hpp"

namespace lingmine {

struct LabeledExample {
  CleanDocument doc;
  Label label = Label::NOT;
  std::string source;
};

struct LabeledDataset {
  std::string name;
  std::vector<LabeledExample> examples;

  std::size_t count(Label l) const {
    std::size_t n = 0;
    for (const auto& ex : examples)
      if (ex.label == l) ++n;
    return n;
  }
};

inline std::vector<std::uint64_t> dedup_keys(const LabeledDataset& ds) {
  std::vector<std::uint64_t> keys;
  keys.reserve(ds.examples.size());
  for (const auto& ex : ds.examples) keys.push_back(dedup_key(ex.doc.text));
  return keys;
}

inline std::vector<MinedRecord> dedup(const std::vector<MinedRecord>& records,
                                      const std::vector<LabeledDataset>& against) {
  std::vector<std::uint64_t> keys;
  for (const auto& ds : against) {
    auto k = dedup_keys(ds);
    keys.insert(keys.end(), k.begin(), k.end());
  }
  return dedup(records, keys);
}

struct MergeResult {
  LabeledDataset dataset;
  std::size_t label_conflicts = 0;  // identical texts with differing labels; first wins
};

inline MergeResult merge(const std::vector<LabeledDataset>& datasets) {
  if (datasets.empty()) throw data_error("merge: no datasets given");
  MergeResult res;
  res.dataset.name = "merged";
  std::map<std::uint64_t, Label> seen;
  for (const auto& ds : datasets) {
    for (const auto& ex : ds.examples) {
      std::uint64_t key = dedup_key(ex.doc.text);
      auto it = seen.find(key);
      if (it != seen.end()) {
        if (it->second != ex.label) ++res.label_conflicts;
        continue;
      }
      seen.emplace(key, ex.label);
      res.dataset.examples.push_back(ex);
    }
  }
  return res;
}

struct BalanceReport {
  std::size_t before_off = 0, before_not = 0;
  std::size_t added = 0;
  std::size_t after_off = 0, after_not = 0;
  std::map<std::string, std::size_t> per_query_added;
  bool exhausted = false;
};

// Appends mined OFF records until the classes are equal or the pool runs out.
// Selection is round-robin over query groups (sorted by id, shuffled within a
// group by the seed) so no single query dominates the added slice.
inline std::pair<LabeledDataset, BalanceReport> balance(const LabeledDataset& base,
                                                        const std::vector<MinedRecord>& pool,
                                                        std::uint64_t seed) {
  BalanceReport rep;
  rep.before_off = base.count(Label::OFF);
  rep.before_not = base.count(Label::NOT);
  std::size_t deficit =
      rep.before_not > rep.before_off ? rep.before_not - rep.before_off : 0;

  std::map<std::string, std::vector<const MinedRecord*>> groups;
  for (const auto& r : pool) groups[r.query_id].push_back(&r);
  Rng rng(seed);
  std::vector<std::vector<const MinedRecord*>> order;
  for (auto& [id, g] : groups) {
    rng.shuffle(g);
    order.push_back(std::move(g));
  }

  LabeledDataset out = base;
  std::size_t take = std::min(deficit, pool.size());
  std::vector<std::size_t> cursor(order.size(), 0);
  while (rep.added < take) {
    bool any = false;
    for (std::size_t gi = 0; gi < order.size() && rep.added < take; ++gi) {
      if (cursor[gi] >= order[gi].size()) continue;
      const MinedRecord* r = order[gi][cursor[gi]++];
      out.examples.push_back({r->doc, Label::OFF, "mined"});
      ++rep.per_query_added[r->query_id];
      ++rep.added;
      any = true;
    }
    if (!any) break;
  }
  rep.exhausted = pool.size() < deficit;
  rep.after_off = rep.before_off + rep.added;
  rep.after_not = rep.before_not;
  return {std::move(out), std::move(rep)};
}

namespace csv_detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

// Minimal CSV row parser with quoted-field support.
inline std::vector<std::string> parse_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace csv_detail

// Uniform sample without replacement, written as a two-annotator CSV with
// empty label columns.
inline std::string sample_for_annotation(const std::vector<MinedRecord>& pool, std::size_t n,
                                         std::uint64_t seed) {
  if (n > pool.size())
    throw data_error("sample_for_annotation: n=" + std::to_string(n) + " exceeds pool size " +
                     std::to_string(pool.size()));
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  rng.shuffle(idx);
  idx.resize(n);
  std::sort(idx.begin(), idx.end());  // keep pool order in the file
  std::string out = "id,text,annotator_a,annotator_b\n";
  for (std::size_t i : idx) {
    out += csv_detail::quote(pool[i].doc.id) + "," + csv_detail::quote(pool[i].doc.text) + ",,\n";
  }
  return out;
}

struct AgreementStats {
  std::size_t n = 0;
  std::size_t both_off = 0;
  std::size_t both_not = 0;
  std::size_t disagree = 0;
  double both_off_frac = 0.0;
  double both_not_frac = 0.0;
  double disagree_frac = 0.0;
  double raw_agreement = 0.0;
};

inline AgreementStats agreement(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw data_error("agreement: empty annotation file");
  AgreementStats st;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = csv_detail::parse_row(line);
    if (fields.size() != 4)
      throw data_error("agreement: row " + std::to_string(row) + ": expected 4 columns, got " +
                       std::to_string(fields.size()));
    Label a, b;
    try {
      a = label_from_string(fields[2]);
      b = label_from_string(fields[3]);
    } catch (const data_error&) {
      throw data_error("agreement: row " + std::to_string(row) + ": missing or invalid label");
    }
    ++st.n;
    if (a == Label::OFF && b == Label::OFF)
      ++st.both_off;
    else if (a == Label::NOT && b == Label::NOT)
      ++st.both_not;
    else
      ++st.disagree;
  }
  if (st.n == 0) throw data_error("agreement: no data rows");
  st.both_off_frac = static_cast<double>(st.both_off) / st.n;
  st.both_not_frac = static_cast<double>(st.both_not) / st.n;
  st.disagree_frac = static_cast<double>(st.disagree) / st.n;
  st.raw_agreement = static_cast<double>(st.both_off + st.both_not) / st.n;
  return st;
}

}  // namespace lingmine
