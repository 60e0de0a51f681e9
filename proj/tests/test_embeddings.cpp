#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "lingmine/embeddings.hpp"
#include "lingmine/rng.hpp"

using namespace lingmine;

namespace {

CleanDocument doc_of(std::string id, std::vector<std::string> tokens) {
  CleanDocument d;
  d.id = std::move(id);
  d.tokens = std::move(tokens);
  return d;
}

// two disjoint topics; tokens co-occur only within their topic
std::vector<CleanDocument> two_topic_corpus(std::size_t sentences, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CleanDocument> corpus;
  for (std::size_t s = 0; s < sentences; ++s) {
    std::string prefix = (s % 2 == 0) ? "a" : "b";
    std::vector<std::string> toks;
    std::size_t len = 5 + rng.below(5);
    for (std::size_t i = 0; i < len; ++i)
      toks.push_back(prefix + std::to_string(1 + rng.below(5)));
    corpus.push_back(doc_of("s" + std::to_string(s), std::move(toks)));
  }
  return corpus;
}

double cosine(const float* a, const float* b, int dim) {
  double dot = 0, na = 0, nb = 0;
  for (int d = 0; d < dim; ++d) {
    dot += static_cast<double>(a[d]) * b[d];
    na += static_cast<double>(a[d]) * a[d];
    nb += static_cast<double>(b[d]) * b[d];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb) + 1e-12);
}

}  // namespace

TEST_CASE("vocabulary thresholding and ordering") {
  std::vector<CleanDocument> corpus = {doc_of("1", {"a", "a", "b"})};
  Vocab v1 = build_vocab(corpus, 2);
  REQUIRE(v1.size() == 1);
  CHECK(v1.entries[0].token == "a");
  CHECK(v1.entries[0].count == 2);

  Vocab v2 = build_vocab(corpus, 1);
  REQUIRE(v2.size() == 2);
  CHECK(v2.entries[0].token == "a");
  CHECK(v2.entries[1].token == "b");

  CHECK_THROWS_AS(build_vocab(corpus, 3), data_error);
}

TEST_CASE("vocab ties break lexicographically") {
  std::vector<CleanDocument> corpus = {doc_of("1", {"z", "m", "a"})};
  Vocab v = build_vocab(corpus, 1);
  REQUIRE(v.size() == 3);
  CHECK(v.entries[0].token == "a");
  CHECK(v.entries[1].token == "m");
  CHECK(v.entries[2].token == "z");
}

TEST_CASE("same seed gives byte-identical tables") {
  auto corpus = two_topic_corpus(200, 3);
  EmbeddingConfig cfg;
  cfg.dim = 8;
  cfg.window = 3;
  cfg.epochs = 2;
  cfg.min_count = 1;
  cfg.seed = 99;
  std::ostringstream a, b;
  save_embeddings_text(train_embeddings(corpus, cfg).table, a);
  save_embeddings_text(train_embeddings(corpus, cfg).table, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("zero epochs returns the initialization") {
  auto corpus = two_topic_corpus(50, 4);
  EmbeddingConfig cfg;
  cfg.dim = 4;
  cfg.epochs = 0;
  cfg.min_count = 1;
  cfg.seed = 5;
  TrainResult res = train_embeddings(corpus, cfg);
  CHECK(res.epoch_loss.empty());
  const double bound = 0.5 / cfg.dim;
  for (float w : res.table.data) {
    CHECK(std::abs(w) <= bound);
    CHECK(w != 0.0f);
  }
}

TEST_CASE("training separates two synthetic topics") {
  auto corpus = two_topic_corpus(2000, 12);
  EmbeddingConfig cfg;
  cfg.dim = 16;
  cfg.window = 3;
  cfg.epochs = 4;
  cfg.negative = 5;
  cfg.min_count = 1;
  cfg.seed = 7;
  TrainResult res = train_embeddings(corpus, cfg);

  double intra = 0, inter = 0;
  int n_intra = 0, n_inter = 0;
  auto idx = [&](const std::string& t) { return res.table.index.at(t); };
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      intra += cosine(res.table.row(idx("a" + std::to_string(i))),
                      res.table.row(idx("a" + std::to_string(j))), cfg.dim);
      intra += cosine(res.table.row(idx("b" + std::to_string(i))),
                      res.table.row(idx("b" + std::to_string(j))), cfg.dim);
      n_intra += 2;
    }
    for (int j = 1; j <= 5; ++j) {
      inter += cosine(res.table.row(idx("a" + std::to_string(i))),
                      res.table.row(idx("b" + std::to_string(j))), cfg.dim);
      ++n_inter;
    }
  }
  intra /= n_intra;
  inter /= n_inter;
  CHECK(intra - inter >= 0.2);

  // loss roughly non-increasing (5% per-epoch slack)
  for (std::size_t e = 1; e < res.epoch_loss.size(); ++e)
    CHECK(res.epoch_loss[e] <= res.epoch_loss[e - 1] * 1.05);

  for (float w : res.table.data) CHECK(std::isfinite(w));
}

TEST_CASE("embed_doc means in-vocabulary vectors") {
  EmbeddingTable t;
  t.dim = 2;
  t.vocab = {{"a", 1}, {"b", 1}};
  t.data = {1.0f, 0.0f, 0.0f, 1.0f};
  t.index = {{"a", 0}, {"b", 1}};

  CHECK(embed_doc(doc_of("1", {"a"}), t) == std::vector<double>{1.0, 0.0});
  CHECK(embed_doc(doc_of("2", {"a", "b"}), t) == std::vector<double>{0.5, 0.5});
  CHECK(embed_doc(doc_of("3", {"zz", "qq"}), t) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("embed_doc is token-order invariant") {
  EmbeddingTable t;
  t.dim = 2;
  t.vocab = {{"a", 1}, {"b", 1}, {"c", 1}};
  t.data = {1.0f, 2.0f, -3.0f, 0.5f, 0.25f, 4.0f};
  t.index = {{"a", 0}, {"b", 1}, {"c", 2}};
  auto v1 = embed_doc(doc_of("1", {"a", "b", "c"}), t);
  auto v2 = embed_doc(doc_of("2", {"c", "a", "b"}), t);
  CHECK(v1 == v2);
}

TEST_CASE("text serialization round-trips") {
  auto corpus = two_topic_corpus(100, 8);
  EmbeddingConfig cfg;
  cfg.dim = 4;
  cfg.epochs = 1;
  cfg.min_count = 1;
  cfg.seed = 2;
  EmbeddingTable t = train_embeddings(corpus, cfg).table;
  std::stringstream ss;
  save_embeddings_text(t, ss);
  EmbeddingTable back = load_embeddings_text(ss);
  REQUIRE(back.dim == t.dim);
  REQUIRE(back.vocab.size() == t.vocab.size());
  for (std::size_t i = 0; i < t.vocab.size(); ++i) {
    CHECK(back.vocab[i].token == t.vocab[i].token);
    for (int d = 0; d < t.dim; ++d) CHECK(back.row(i)[d] == t.row(i)[d]);
  }
}

TEST_CASE("binary serialization round-trips exactly") {
  auto corpus = two_topic_corpus(100, 9);
  EmbeddingConfig cfg;
  cfg.dim = 3;
  cfg.epochs = 1;
  cfg.min_count = 1;
  cfg.seed = 6;
  EmbeddingTable t = train_embeddings(corpus, cfg).table;
  std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
  save_embeddings_binary(t, ss);
  EmbeddingTable back = load_embeddings_binary(ss);
  REQUIRE(back.vocab.size() == t.vocab.size());
  CHECK(back.data == t.data);
}
