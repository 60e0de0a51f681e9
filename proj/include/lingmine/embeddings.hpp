#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "lingmine/core.hpp"
#include "lingmine/rng.hpp"
#include "lingmine/textproc.hpp"

namespace lingmine {

struct EmbeddingConfig {
  int window = 7;
  int dim = 300;
  int epochs = 16;
  int negative = 5;
  int min_count = 5;
  double initial_lr = 0.025;
  double min_lr = 1e-4;
  std::uint64_t seed = 1;
  double subsample_t = 0.0;  // 0 disables frequent-word subsampling

  void validate() const {
    if (window < 1 || dim < 1 || epochs < 0 || negative < 0 || min_count < 1)
      throw config_error("embedding config: counts must be positive");
    if (initial_lr <= 0) throw config_error("embedding config: initial_lr must be > 0");
  }
};

struct VocabEntry {
  std::string token;
  std::size_t count = 0;
};

struct Vocab {
  std::vector<VocabEntry> entries;  // descending count, ties lexicographic
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return entries.size(); }
};

inline Vocab build_vocab(const std::vector<CleanDocument>& corpus, int min_count) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& doc : corpus)
    for (const auto& tok : doc.tokens) ++counts[tok];
  Vocab v;
  for (auto& [tok, c] : counts)
    if (c >= static_cast<std::size_t>(min_count)) v.entries.push_back({tok, c});
  if (v.entries.empty()) throw data_error("build_vocab: no token meets min_count");
  std::sort(v.entries.begin(), v.entries.end(), [](const VocabEntry& a, const VocabEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.token < b.token;
  });
  for (std::size_t i = 0; i < v.entries.size(); ++i) v.index[v.entries[i].token] = i;
  return v;
}

struct EmbeddingTable {
  int dim = 0;
  std::vector<VocabEntry> vocab;
  std::vector<float> data;  // vocab.size() x dim, row-major
  std::unordered_map<std::string, std::size_t> index;

  const float* row(std::size_t i) const { return data.data() + i * dim; }

  const float* find(const std::string& token) const {
    auto it = index.find(token);
    return it == index.end() ? nullptr : row(it->second);
  }
};

struct TrainResult {
  EmbeddingTable table;
  std::vector<double> epoch_loss;  // mean per-pair negative objective
};

namespace embed_detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// cumulative unigram^(3/4) distribution for negative sampling
inline std::vector<double> negative_cdf(const Vocab& vocab) {
  std::vector<double> cdf(vocab.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    acc += std::pow(static_cast<double>(vocab.entries[i].count), 0.75);
    cdf[i] = acc;
  }
  for (double& c : cdf) c /= acc;
  return cdf;
}

inline std::size_t sample_negative(const std::vector<double>& cdf, Rng& rng) {
  double u = rng.uniform();
  auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace embed_detail

// Deterministic single-threaded skip-gram with negative sampling. The learning
// rate decays linearly over all epochs down to min_lr.
inline TrainResult train_embeddings(const std::vector<CleanDocument>& corpus,
                                    const EmbeddingConfig& cfg) {
  cfg.validate();
  Vocab vocab = build_vocab(corpus, cfg.min_count);
  const std::size_t V = vocab.size();
  const int D = cfg.dim;

  Rng rng(cfg.seed);
  std::vector<float> syn0(V * D), syn1(V * D);
  const double r = 0.5 / D;
  for (auto& w : syn0) w = static_cast<float>(rng.uniform(-r, r));
  for (auto& w : syn1) w = static_cast<float>(rng.uniform(-r, r));

  // pre-index the corpus, dropping OOV tokens
  std::vector<std::vector<std::size_t>> docs;
  std::size_t total_positions = 0;
  for (const auto& doc : corpus) {
    std::vector<std::size_t> idx;
    for (const auto& tok : doc.tokens) {
      auto it = vocab.index.find(tok);
      if (it != vocab.index.end()) idx.push_back(it->second);
    }
    total_positions += idx.size();
    docs.push_back(std::move(idx));
  }

  std::vector<double> cdf = embed_detail::negative_cdf(vocab);
  std::size_t corpus_tokens = 0;
  for (const auto& e : vocab.entries) corpus_tokens += e.count;

  TrainResult res;
  std::size_t processed = 0;
  const std::size_t planned = std::max<std::size_t>(1, total_positions * cfg.epochs);
  std::vector<double> grad_v(D);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t pairs = 0;
    for (const auto& idx_full : docs) {
      std::vector<std::size_t> idx;
      if (cfg.subsample_t > 0.0) {
        for (std::size_t wi : idx_full) {
          double f = static_cast<double>(vocab.entries[wi].count) / corpus_tokens;
          double keep = std::sqrt(cfg.subsample_t / f);
          if (keep >= 1.0 || rng.uniform() < keep) idx.push_back(wi);
        }
      } else {
        idx = idx_full;
      }
      for (std::size_t i = 0; i < idx.size(); ++i) {
        double progress = static_cast<double>(processed) / planned;
        double alpha = std::max(cfg.min_lr, cfg.initial_lr * (1.0 - progress));
        ++processed;
        int b = 1 + static_cast<int>(rng.below(cfg.window));  // shrunk window in [1, window]
        std::size_t center = idx[i];
        float* v = syn0.data() + center * D;
        for (int j = static_cast<int>(i) - b; j <= static_cast<int>(i) + b; ++j) {
          if (j < 0 || j >= static_cast<int>(idx.size()) || j == static_cast<int>(i)) continue;
          std::size_t context = idx[j];
          std::fill(grad_v.begin(), grad_v.end(), 0.0);
          double pair_loss = 0.0;
          for (int k = 0; k <= cfg.negative; ++k) {
            std::size_t target;
            double label;
            if (k == 0) {
              target = context;
              label = 1.0;
            } else {
              target = embed_detail::sample_negative(cdf, rng);
              if (target == context) continue;
              label = 0.0;
            }
            float* u = syn1.data() + target * D;
            double s = 0.0;
            for (int d = 0; d < D; ++d) s += static_cast<double>(v[d]) * u[d];
            double p = embed_detail::sigmoid(s);
            pair_loss -= label == 1.0 ? std::log(std::max(p, 1e-12))
                                      : std::log(std::max(1.0 - p, 1e-12));
            double g = (label - p) * alpha;
            for (int d = 0; d < D; ++d) {
              grad_v[d] += g * u[d];
              u[d] += static_cast<float>(g * v[d]);
            }
          }
          for (int d = 0; d < D; ++d) v[d] += static_cast<float>(grad_v[d]);
          loss_sum += pair_loss;
          ++pairs;
        }
      }
    }
    res.epoch_loss.push_back(pairs ? loss_sum / pairs : 0.0);
  }

  for (const float w : syn0)
    if (!std::isfinite(w)) throw data_error("embedding training produced non-finite weights");

  res.table.dim = D;
  res.table.vocab = vocab.entries;
  res.table.data = std::move(syn0);
  res.table.index = vocab.index;
  return res;
}

// Mean of the in-vocabulary token vectors; all-OOV documents map to zero.
inline std::vector<double> embed_doc(const CleanDocument& doc, const EmbeddingTable& table) {
  std::vector<double> acc(table.dim, 0.0);
  std::size_t n = 0;
  for (const auto& tok : doc.tokens) {
    const float* v = table.find(tok);
    if (!v) continue;
    for (int d = 0; d < table.dim; ++d) acc[d] += v[d];
    ++n;
  }
  if (n)
    for (double& x : acc) x /= static_cast<double>(n);
  return acc;
}

// Text format: first line `vocab_size dim`, then `token v1 ... v_dim` per line.
inline void save_embeddings_text(const EmbeddingTable& table, std::ostream& out) {
  out << table.vocab.size() << ' ' << table.dim << '\n';
  char buf[48];
  for (std::size_t i = 0; i < table.vocab.size(); ++i) {
    out << table.vocab[i].token;
    const float* v = table.row(i);
    for (int d = 0; d < table.dim; ++d) {
      std::snprintf(buf, sizeof(buf), " %.9g", static_cast<double>(v[d]));
      out << buf;
    }
    out << '\n';
  }
}

inline EmbeddingTable load_embeddings_text(std::istream& in, const std::string& name = "<embeddings>") {
  EmbeddingTable t;
  std::size_t vocab_size = 0;
  if (!(in >> vocab_size >> t.dim) || t.dim < 1)
    throw data_error(name + ": malformed embedding header");
  t.vocab.resize(vocab_size);
  t.data.resize(vocab_size * t.dim);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    if (!(in >> t.vocab[i].token))
      throw data_error(name + ": truncated at row " + std::to_string(i + 1));
    for (int d = 0; d < t.dim; ++d)
      if (!(in >> t.data[i * t.dim + d]))
        throw data_error(name + ": truncated vector at row " + std::to_string(i + 1));
    t.index[t.vocab[i].token] = i;
  }
  return t;
}

// Binary format: ASCII header line `vocab_size dim`, then per token the token
// bytes, one space, dim little-endian float32 values, and a newline.
inline void save_embeddings_binary(const EmbeddingTable& table, std::ostream& out) {
  out << table.vocab.size() << ' ' << table.dim << '\n';
  for (std::size_t i = 0; i < table.vocab.size(); ++i) {
    out << table.vocab[i].token << ' ';
    out.write(reinterpret_cast<const char*>(table.row(i)),
              static_cast<std::streamsize>(sizeof(float) * table.dim));
    out << '\n';
  }
}

inline EmbeddingTable load_embeddings_binary(std::istream& in,
                                             const std::string& name = "<embeddings>") {
  EmbeddingTable t;
  std::size_t vocab_size = 0;
  if (!(in >> vocab_size >> t.dim) || t.dim < 1)
    throw data_error(name + ": malformed embedding header");
  in.get();  // newline
  t.vocab.resize(vocab_size);
  t.data.resize(vocab_size * t.dim);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    std::string tok;
    char c;
    while (in.get(c) && c != ' ') tok += c;
    if (tok.empty()) throw data_error(name + ": truncated at row " + std::to_string(i + 1));
    t.vocab[i].token = tok;
    in.read(reinterpret_cast<char*>(t.data.data() + i * t.dim),
            static_cast<std::streamsize>(sizeof(float) * t.dim));
    if (!in) throw data_error(name + ": truncated vector at row " + std::to_string(i + 1));
    in.get();  // newline
    t.index[tok] = i;
  }
  return t;
}

}  // namespace lingmine
