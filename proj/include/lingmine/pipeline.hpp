#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "lingmine/augment.hpp"
#include "lingmine/embeddings.hpp"
#include "lingmine/eval.hpp"
#include "lingmine/jsonl.hpp"
#include "lingmine/manifest.hpp"
#include "lingmine/miner.hpp"
#include "lingmine/querygen.hpp"
#include "lingmine/svm.hpp"
#include "lingmine/textproc.hpp"

namespace lingmine {

struct PipelineConfig {
  Lang language = Lang::TR;
  std::uint64_t seed = 42;
  std::string output_dir = "out";

  // inputs (resolved relative to the config file location)
  std::string raw_corpus;
  std::string base_dataset;
  std::string test_dataset;
  std::string swears;        // TR
  std::string entities;      // TR entity JSONL
  std::string ows;           // EN
  std::string pronouns;      // EN
  std::string entity_words;  // EN plain word list
  std::string lexicon;       // optional normalizer lexicon

  std::set<QueryPattern> kinds;  // EN pattern families
  MatchConfig match = MatchConfig::defaults();
  NormalizerConfig normalizer;
  EmbeddingConfig embedding;
  double svm_lambda = 1.0;
  bool balance_enabled = true;
  bool emit_bare_forms = false;  // also emit LEMMA/PL Turkish query forms

  std::string config_hash;  // filled at load time

  static PipelineConfig load(const std::string& path);
};

namespace pipeline_detail {

inline std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return p;
  std::filesystem::path fp(p);
  return fp.is_absolute() ? fp.string() : (base / fp).string();
}

}  // namespace pipeline_detail

inline PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw config_error(path + ": malformed JSON config");

  PipelineConfig cfg;
  cfg.config_hash = hex64(fnv1a64(j.dump()));
  const std::filesystem::path base = std::filesystem::path(path).parent_path();

  if (j.contains("language")) cfg.language = lang_from_string(j["language"].get<std::string>());
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  cfg.output_dir = pipeline_detail::resolve(base, j.value("output_dir", std::string("out")));

  const nlohmann::json paths = j.value("paths", nlohmann::json::object());
  auto pick = [&](const char* key) {
    return pipeline_detail::resolve(base, paths.value(key, std::string()));
  };
  cfg.raw_corpus = pick("raw_corpus");
  cfg.base_dataset = pick("base_dataset");
  cfg.test_dataset = pick("test_dataset");
  cfg.swears = pick("swears");
  cfg.entities = pick("entities");
  cfg.ows = pick("ows");
  cfg.pronouns = pick("pronouns");
  cfg.entity_words = pick("entity_words");
  cfg.lexicon = pick("lexicon");

  if (j.contains("kinds"))
    for (const auto& k : j["kinds"]) cfg.kinds.insert(pattern_from_string(k.get<std::string>()));

  if (j.contains("match")) {
    const auto& m = j["match"];
    if (m.contains("modes")) {
      cfg.match.bigram = cfg.match.compound = cfg.match.window = false;
      for (const auto& mode : m["modes"]) {
        std::string s = mode.get<std::string>();
        if (s == "bigram")
          cfg.match.bigram = true;
        else if (s == "compound")
          cfg.match.compound = true;
        else if (s == "window")
          cfg.match.window = true;
        else
          throw config_error(path + ": unknown match mode '" + s + "'");
      }
    }
    cfg.match.window_k = m.value("window_k", cfg.match.window_k);
    cfg.match.validate();
  }

  if (j.contains("normalizer")) {
    const auto& n = j["normalizer"];
    cfg.normalizer.enabled = n.value("enabled", false);
    cfg.normalizer.squeeze_runs = n.value("squeeze_runs", true);
  }
  if (!cfg.lexicon.empty()) cfg.normalizer.replacements = load_replacement_lexicon(cfg.lexicon);

  if (j.contains("embedding")) {
    const auto& e = j["embedding"];
    cfg.embedding.window = e.value("window", cfg.embedding.window);
    cfg.embedding.dim = e.value("dim", cfg.embedding.dim);
    cfg.embedding.epochs = e.value("epochs", cfg.embedding.epochs);
    cfg.embedding.negative = e.value("negative", cfg.embedding.negative);
    cfg.embedding.min_count = e.value("min_count", cfg.embedding.min_count);
    cfg.embedding.initial_lr = e.value("initial_lr", cfg.embedding.initial_lr);
    cfg.embedding.subsample_t = e.value("subsample_t", cfg.embedding.subsample_t);
    cfg.embedding.validate();
  }
  cfg.embedding.seed = cfg.seed;

  if (j.contains("svm")) cfg.svm_lambda = j["svm"].value("lambda", cfg.svm_lambda);
  cfg.balance_enabled = j.value("balance", true);
  cfg.emit_bare_forms = j.value("emit_bare_forms", false);

  auto must_exist = [&](const std::string& p, const char* what) {
    if (!p.empty() && !std::filesystem::exists(p))
      throw config_error(path + ": " + what + " does not exist: " + p);
  };
  must_exist(cfg.raw_corpus, "raw_corpus");
  must_exist(cfg.base_dataset, "base_dataset");
  must_exist(cfg.test_dataset, "test_dataset");
  must_exist(cfg.swears, "swears");
  must_exist(cfg.entities, "entities");
  must_exist(cfg.ows, "ows");
  must_exist(cfg.pronouns, "pronouns");
  must_exist(cfg.entity_words, "entity_words");
  return cfg;
}

struct PipelineResult {
  EvalReport report;
  BalanceReport balance;
  std::size_t mined = 0;
  std::size_t pool = 0;
  std::string report_path;
};

namespace pipeline_detail {

inline LabeledDataset clean_dataset(const LabeledDataset& raw, const NormalizerConfig& norm) {
  LabeledDataset out;
  out.name = raw.name;
  for (const auto& ex : raw.examples) {
    CleanDocument d = clean({ex.doc.id, ex.doc.text, ex.doc.lang});
    if (norm.enabled) d = normalize(d, norm);
    out.examples.push_back({std::move(d), ex.label, ex.source});
  }
  return out;
}

inline TrainSet featurize(const LabeledDataset& ds, const EmbeddingTable& table) {
  TrainSet set;
  for (const auto& ex : ds.examples) {
    set.X.push_back(embed_doc(ex.doc, table));
    set.y.push_back(ex.label == Label::OFF ? 1 : -1);
  }
  return set;
}

}  // namespace pipeline_detail

// clean -> gen-queries -> mine -> dedup -> balance -> train-embed -> train-svm
// -> evaluate, writing every stage output plus its manifest under output_dir.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);

  auto stage_manifest = [&](const std::string& sub, const std::vector<std::string>& inputs,
                            const std::string& output,
                            const std::map<std::string, std::int64_t>& counts) {
    Manifest m;
    m.subcommand = sub;
    m.seed = cfg.seed;
    m.config_hash = cfg.config_hash;
    for (const auto& p : inputs) m.add_input(p);
    m.add_output(output);
    m.counts = counts;
    m.write(output);
  };

  // clean
  if (cfg.raw_corpus.empty() || cfg.base_dataset.empty() || cfg.test_dataset.empty())
    throw config_error("pipeline requires raw_corpus, base_dataset and test_dataset paths");
  std::vector<RawDocument> raw = io::read_raw_corpus(cfg.raw_corpus, cfg.language);
  std::vector<CleanDocument> corpus;
  for (const auto& d : raw) {
    CleanDocument c = clean(d);
    if (cfg.normalizer.enabled) c = normalize(c, cfg.normalizer);
    corpus.push_back(std::move(c));
  }
  const std::string clean_path = (out / "corpus.clean.jsonl").string();
  {
    std::ofstream f(clean_path);
    io::write_clean_corpus(corpus, f);
  }
  stage_manifest("clean", {cfg.raw_corpus}, clean_path,
                 {{"documents", static_cast<std::int64_t>(corpus.size())}});

  LabeledDataset base = pipeline_detail::clean_dataset(
      io::read_dataset(cfg.base_dataset, cfg.language, "base"), cfg.normalizer);
  LabeledDataset test = pipeline_detail::clean_dataset(
      io::read_dataset(cfg.test_dataset, cfg.language, "test"), cfg.normalizer);

  // gen-queries
  std::vector<Query> queries;
  std::vector<std::string> query_inputs;
  if (cfg.language == Lang::TR) {
    if (cfg.swears.empty() || cfg.entities.empty())
      throw config_error("Turkish pipeline requires swears and entities paths");
    queries = generate_turkish(io::read_word_list(cfg.swears), io::read_entities(cfg.entities),
                               cfg.emit_bare_forms);
    query_inputs = {cfg.swears, cfg.entities};
  } else {
    if (cfg.ows.empty()) throw config_error("English pipeline requires an ows path");
    std::set<QueryPattern> kinds = cfg.kinds;
    if (kinds.empty()) kinds = {QueryPattern::LOOSE_ORDER};
    std::vector<std::string> pronouns =
        cfg.pronouns.empty() ? std::vector<std::string>{} : io::read_word_list(cfg.pronouns);
    std::vector<std::string> ents =
        cfg.entity_words.empty() ? std::vector<std::string>{} : io::read_word_list(cfg.entity_words);
    queries = generate_english(io::read_word_list(cfg.ows), pronouns, ents, kinds);
    query_inputs = {cfg.ows};
    if (!cfg.pronouns.empty()) query_inputs.push_back(cfg.pronouns);
    if (!cfg.entity_words.empty()) query_inputs.push_back(cfg.entity_words);
  }
  const std::string queries_path = (out / "queries.jsonl").string();
  {
    std::ofstream f(queries_path);
    io::write_queries(queries, f);
  }
  stage_manifest("gen-queries", query_inputs, queries_path,
                 {{"queries", static_cast<std::int64_t>(queries.size())}});

  // mine
  std::vector<MinedRecord> mined = mine(corpus, queries, cfg.match);
  const std::string mined_path = (out / "mined.jsonl").string();
  {
    std::ofstream f(mined_path);
    io::write_mined(mined, f);
  }
  stage_manifest("mine", {clean_path, queries_path}, mined_path,
                 {{"mined", static_cast<std::int64_t>(mined.size())}});

  // dedup against base + test
  std::vector<MinedRecord> pool = dedup(mined, std::vector<LabeledDataset>{base, test});
  const std::string pool_path = (out / "pool.jsonl").string();
  {
    std::ofstream f(pool_path);
    io::write_mined(pool, f);
  }
  stage_manifest("dedup", {mined_path, cfg.base_dataset, cfg.test_dataset}, pool_path,
                 {{"pool", static_cast<std::int64_t>(pool.size())}});

  // balance
  LabeledDataset train = base;
  BalanceReport brep;
  if (cfg.balance_enabled) {
    auto [balanced, rep] = balance(base, pool, cfg.seed);
    train = std::move(balanced);
    brep = std::move(rep);
  } else {
    brep.before_off = brep.after_off = base.count(Label::OFF);
    brep.before_not = brep.after_not = base.count(Label::NOT);
  }
  const std::string train_path = (out / "train.jsonl").string();
  {
    std::ofstream f(train_path);
    io::write_dataset(train, f);
  }
  {
    Manifest m;
    m.subcommand = "balance";
    m.seed = cfg.seed;
    m.config_hash = cfg.config_hash;
    m.add_input(cfg.base_dataset);
    m.add_input(pool_path);
    m.add_output(train_path);
    m.counts = {{"before_off", static_cast<std::int64_t>(brep.before_off)},
                {"before_not", static_cast<std::int64_t>(brep.before_not)},
                {"added", static_cast<std::int64_t>(brep.added)},
                {"after_off", static_cast<std::int64_t>(brep.after_off)},
                {"after_not", static_cast<std::int64_t>(brep.after_not)}};
    m.notes["exhausted"] = brep.exhausted ? "true" : "false";
    m.write(train_path);
  }

  // train/test contamination guard
  {
    std::unordered_set<std::uint64_t> test_keys;
    for (const auto& ex : test.examples) test_keys.insert(dedup_key(ex.doc.text));
    for (const auto& ex : train.examples)
      if (test_keys.count(dedup_key(ex.doc.text)))
        throw data_error("train/test contamination: training text '" + ex.doc.id +
                         "' shares a dedup key with the test set");
  }

  // train-embed on the training texts
  std::vector<CleanDocument> train_texts;
  for (const auto& ex : train.examples) train_texts.push_back(ex.doc);
  TrainResult emb = train_embeddings(train_texts, cfg.embedding);
  const std::string emb_path = (out / "embeddings.txt").string();
  {
    std::ofstream f(emb_path, std::ios::binary);
    save_embeddings_text(emb.table, f);
  }
  stage_manifest("train-embed", {train_path}, emb_path,
                 {{"vocab", static_cast<std::int64_t>(emb.table.vocab.size())},
                  {"dim", cfg.embedding.dim}});

  // train-svm
  TrainSet train_set = pipeline_detail::featurize(train, emb.table);
  LinearModel model = train_svm(train_set, {.lambda = cfg.svm_lambda});
  const std::string model_path = (out / "model.json").string();
  {
    std::ofstream f(model_path);
    io::save_model(model, f);
  }
  stage_manifest("train-svm", {train_path, emb_path}, model_path,
                 {{"examples", static_cast<std::int64_t>(train_set.X.size())}});

  // predict + evaluate on the held-out test set
  std::vector<io::Prediction> preds;
  std::vector<Label> pred_labels, gold_labels;
  for (const auto& ex : test.examples) {
    Label p = predict(model, embed_doc(ex.doc, emb.table));
    preds.push_back({ex.doc.id, p, true, ex.label});
    pred_labels.push_back(p);
    gold_labels.push_back(ex.label);
  }
  const std::string preds_path = (out / "predictions.jsonl").string();
  {
    std::ofstream f(preds_path);
    io::write_predictions(preds, f);
  }
  stage_manifest("predict", {model_path, cfg.test_dataset}, preds_path,
                 {{"predictions", static_cast<std::int64_t>(preds.size())}});

  EvalReport rep = report(confusion(pred_labels, gold_labels));
  rep.model_name = "word2vec-svm";
  rep.dataset_name = cfg.balance_enabled ? "augmented" : "baseline";
  const std::string report_path = (out / "report.json").string();
  io::write_file(report_path, render({rep}, ReportFormat::JSON));
  io::write_file((out / "report.txt").string(), render({rep}, ReportFormat::TEXT));
  stage_manifest("evaluate", {preds_path}, report_path,
                 {{"test_examples", static_cast<std::int64_t>(test.examples.size())}});

  PipelineResult result;
  result.report = rep;
  result.balance = brep;
  result.mined = mined.size();
  result.pool = pool.size();
  result.report_path = report_path;
  return result;
}

}  // namespace lingmine
