// lingmine: linguistic query mining and dataset balancing toolkit.
//
// Subcommands cover the pipeline stages: clean, gen-queries, mine, dedup,
// balance, sample-annotate, agreement, train-embed, embed, train-svm,
// predict, evaluate, and an end-to-end pipeline driver. Every output file
// gets a sibling .manifest.json with config hash, seed, input digests and
// counts.
//
// Exit codes: 0 success, 1 usage/config error, 2 data/validation error.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lingmine/augment.hpp"
#include "lingmine/embeddings.hpp"
#include "lingmine/eval.hpp"
#include "lingmine/jsonl.hpp"
#include "lingmine/manifest.hpp"
#include "lingmine/miner.hpp"
#include "lingmine/morphology.hpp"
#include "lingmine/pipeline.hpp"
#include "lingmine/querygen.hpp"
#include "lingmine/svm.hpp"
#include "lingmine/textproc.hpp"

namespace {

using namespace lingmine;

struct Common {
  std::string config_path;
  std::string lang = "tr";
  std::uint64_t seed = 42;
  bool seed_set = false;
  bool lang_set = false;

  // Effective settings: config file values overridden by explicit flags.
  std::optional<PipelineConfig> cfg;

  void load() {
    if (!config_path.empty()) {
      cfg = PipelineConfig::load(config_path);
      if (!seed_set) seed = cfg->seed;
      if (!lang_set) lang = to_string(cfg->language);
    }
  }

  Lang language() const { return lang_from_string(lang); }

  std::string config_hash() const {
    return cfg ? cfg->config_hash : hex64(fnv1a64("no-config"));
  }
};

Manifest make_manifest(const Common& c, const std::string& sub) {
  Manifest m;
  m.subcommand = sub;
  m.seed = c.seed;
  m.config_hash = c.config_hash();
  return m;
}

MatchConfig parse_match(const std::vector<std::string>& modes, int window_k) {
  if (modes.empty()) return MatchConfig::defaults();
  MatchConfig cfg;
  cfg.bigram = cfg.compound = cfg.window = false;
  cfg.window_k = window_k;
  for (const auto& m : modes) {
    if (m == "bigram")
      cfg.bigram = true;
    else if (m == "compound")
      cfg.compound = true;
    else if (m == "window")
      cfg.window = true;
    else
      throw config_error("unknown match mode '" + m + "' (bigram|compound|window)");
  }
  cfg.validate();
  return cfg;
}

void write_lines(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write file: " + path);
  fn(out);
}

int run(int argc, char** argv) {
  CLI::App app{"linguistic query mining and dataset balancing toolkit"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--config", common.config_path, "pipeline config file (JSON)");
  app.add_option("--seed", common.seed, "random seed")->each([&](const std::string&) {
    common.seed_set = true;
  });
  app.add_option("--lang", common.lang, "language: tr|en")->each([&](const std::string&) {
    common.lang_set = true;
  });

  // clean
  auto* cmd_clean = app.add_subcommand("clean", "clean a raw JSONL corpus");
  std::string in_path, out_path, lexicon_path;
  bool do_normalize = false, no_squeeze = false;
  cmd_clean->add_option("--input", in_path, "raw corpus JSONL")->required();
  cmd_clean->add_option("--output", out_path, "cleaned corpus JSONL")->required();
  cmd_clean->add_flag("--normalize", do_normalize, "apply run-squeeze + lexicon normalization");
  cmd_clean->add_option("--lexicon", lexicon_path, "replacement lexicon (from<TAB>to)");
  cmd_clean->add_flag("--no-squeeze", no_squeeze, "disable letter-run squeezing");

  // gen-queries
  auto* cmd_gen = app.add_subcommand("gen-queries", "build the query set");
  std::string swears_path, entities_path, ows_path, pronouns_path, entity_words_path;
  std::vector<std::string> kind_names;
  bool bare_forms = false;
  cmd_gen->add_option("--swears", swears_path, "swear word list (tr)");
  cmd_gen->add_option("--entities", entities_path, "entity JSONL (tr)");
  cmd_gen->add_option("--ows", ows_path, "offensive word list (en)");
  cmd_gen->add_option("--pronouns", pronouns_path, "pronoun list (en)");
  cmd_gen->add_option("--entity-words", entity_words_path, "entity word list (en)");
  cmd_gen->add_option("--kinds", kind_names,
                      "en pattern kinds (loose_order,strict_order,no_pronoun,ow_only)");
  cmd_gen->add_flag("--bare-forms", bare_forms, "also emit lemma/plural Turkish forms");
  cmd_gen->add_option("--output", out_path, "query set JSONL")->required();

  // mine
  auto* cmd_mine = app.add_subcommand("mine", "match a cleaned corpus against queries");
  std::string corpus_path, queries_path;
  std::vector<std::string> match_modes;
  int window_k = 2;
  cmd_mine->add_option("--corpus", corpus_path, "cleaned corpus JSONL")->required();
  cmd_mine->add_option("--queries", queries_path, "query set JSONL")->required();
  cmd_mine->add_option("--modes", match_modes, "turkish match modes (bigram,compound,window)");
  cmd_mine->add_option("--window-k", window_k, "window size for window mode");
  cmd_mine->add_option("--output", out_path, "mined records JSONL")->required();

  // dedup
  auto* cmd_dedup = app.add_subcommand("dedup", "drop mined records colliding with datasets");
  std::string mined_path;
  std::vector<std::string> against_paths;
  cmd_dedup->add_option("--mined", mined_path, "mined records JSONL")->required();
  cmd_dedup->add_option("--against", against_paths, "labeled dataset JSONL files");
  cmd_dedup->add_option("--output", out_path, "deduplicated records JSONL")->required();

  // balance
  auto* cmd_balance = app.add_subcommand("balance", "balance classes with mined records");
  std::string base_path, pool_path, report_path;
  cmd_balance->add_option("--base", base_path, "base labeled dataset JSONL")->required();
  cmd_balance->add_option("--pool", pool_path, "deduplicated mined pool JSONL")->required();
  cmd_balance->add_option("--output", out_path, "balanced dataset JSONL")->required();
  cmd_balance->add_option("--report", report_path, "balance report JSON");

  // sample-annotate
  auto* cmd_sample = app.add_subcommand("sample-annotate", "draw an annotation sample");
  std::size_t sample_n = 100;
  cmd_sample->add_option("--pool", pool_path, "mined pool JSONL")->required();
  cmd_sample->add_option("-n,--n", sample_n, "sample size");
  cmd_sample->add_option("--output", out_path, "annotation CSV")->required();

  // agreement
  auto* cmd_agree = app.add_subcommand("agreement", "score a filled annotation file");
  cmd_agree->add_option("--input", in_path, "filled annotation CSV")->required();
  cmd_agree->add_option("--output", out_path, "stats JSON (default: stdout)");

  // train-embed
  auto* cmd_embed_train = app.add_subcommand("train-embed", "train word embeddings");
  EmbeddingConfig embed_cfg;
  bool embed_binary = false;
  cmd_embed_train->add_option("--corpus", corpus_path, "cleaned corpus JSONL")->required();
  cmd_embed_train->add_option("--output", out_path, "embedding table file")->required();
  cmd_embed_train->add_option("--window", embed_cfg.window, "context window");
  cmd_embed_train->add_option("--dim", embed_cfg.dim, "vector size");
  cmd_embed_train->add_option("--epochs", embed_cfg.epochs, "training epochs");
  cmd_embed_train->add_option("--negative", embed_cfg.negative, "negative samples");
  cmd_embed_train->add_option("--min-count", embed_cfg.min_count, "vocabulary threshold");
  cmd_embed_train->add_option("--lr", embed_cfg.initial_lr, "initial learning rate");
  cmd_embed_train->add_option("--subsample", embed_cfg.subsample_t,
                              "frequent-word subsample threshold (0 = off)");
  cmd_embed_train->add_flag("--binary", embed_binary, "write the binary table format");

  // embed
  auto* cmd_embed = app.add_subcommand("embed", "pool documents into vectors");
  std::string table_path;
  cmd_embed->add_option("--input", in_path, "cleaned corpus JSONL")->required();
  cmd_embed->add_option("--table", table_path, "embedding table file")->required();
  cmd_embed->add_option("--output", out_path, "document vectors JSONL")->required();

  // train-svm
  auto* cmd_svm = app.add_subcommand("train-svm", "train the linear classifier");
  double lambda = 1.0;
  std::string train_path;
  cmd_svm->add_option("--train", train_path, "labeled dataset JSONL")->required();
  cmd_svm->add_option("--table", table_path, "embedding table file")->required();
  cmd_svm->add_option("--lambda", lambda, "L2 regularization constant");
  cmd_svm->add_option("--output", out_path, "model JSON")->required();

  // predict
  auto* cmd_predict = app.add_subcommand("predict", "label documents with a trained model");
  std::string model_path;
  cmd_predict->add_option("--model", model_path, "model JSON")->required();
  cmd_predict->add_option("--table", table_path, "embedding table file")->required();
  cmd_predict->add_option("--input", in_path, "labeled or cleaned dataset JSONL")->required();
  cmd_predict->add_option("--output", out_path, "predictions JSONL")->required();

  // evaluate
  auto* cmd_eval = app.add_subcommand("evaluate", "confusion metrics from predictions");
  std::string format = "text", model_name = "model", dataset_name = "dataset";
  cmd_eval->add_option("--preds", in_path, "predictions JSONL with gold labels")->required();
  cmd_eval->add_option("--format", format, "text|csv|json");
  cmd_eval->add_option("--model-name", model_name, "model column value");
  cmd_eval->add_option("--dataset-name", dataset_name, "dataset column value");
  cmd_eval->add_option("--output", out_path, "report file (default: stdout)");

  // pipeline
  auto* cmd_pipeline = app.add_subcommand("pipeline", "run all stages end to end");

  // global --config/--seed/--lang may appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands(static_cast<std::function<bool(CLI::App*)>>(nullptr)))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // usage errors map to exit code 1
  }
  common.load();
  const Lang lang = common.language();

  if (cmd_clean->parsed()) {
    NormalizerConfig norm;
    norm.enabled = do_normalize;
    norm.squeeze_runs = !no_squeeze;
    if (!lexicon_path.empty()) norm.replacements = load_replacement_lexicon(lexicon_path);
    std::vector<RawDocument> raw = io::read_raw_corpus(in_path, lang);
    std::vector<CleanDocument> docs;
    for (const auto& d : raw) {
      CleanDocument c = clean(d);
      if (norm.enabled) c = normalize(c, norm);
      docs.push_back(std::move(c));
    }
    write_lines(out_path, [&](std::ostream& o) { io::write_clean_corpus(docs, o); });
    Manifest m = make_manifest(common, "clean");
    m.add_input(in_path);
    if (!lexicon_path.empty()) m.add_input(lexicon_path);
    m.add_output(out_path);
    m.counts["documents"] = static_cast<std::int64_t>(docs.size());
    m.write(out_path);
    return 0;
  }

  if (cmd_gen->parsed()) {
    std::vector<Query> queries;
    Manifest m = make_manifest(common, "gen-queries");
    if (lang == Lang::TR) {
      if (swears_path.empty() || entities_path.empty())
        throw config_error("gen-queries --lang tr requires --swears and --entities");
      queries = generate_turkish(io::read_word_list(swears_path),
                                 io::read_entities(entities_path), bare_forms);
      m.add_input(swears_path);
      m.add_input(entities_path);
    } else {
      if (ows_path.empty()) throw config_error("gen-queries --lang en requires --ows");
      std::set<QueryPattern> kinds;
      for (const auto& k : kind_names) kinds.insert(pattern_from_string(k));
      if (kinds.empty()) kinds = {QueryPattern::LOOSE_ORDER};
      std::vector<std::string> pronouns =
          pronouns_path.empty() ? std::vector<std::string>{} : io::read_word_list(pronouns_path);
      std::vector<std::string> ents = entity_words_path.empty()
                                          ? std::vector<std::string>{}
                                          : io::read_word_list(entity_words_path);
      queries = generate_english(io::read_word_list(ows_path), pronouns, ents, kinds);
      m.add_input(ows_path);
      if (!pronouns_path.empty()) m.add_input(pronouns_path);
      if (!entity_words_path.empty()) m.add_input(entity_words_path);
    }
    write_lines(out_path, [&](std::ostream& o) { io::write_queries(queries, o); });
    m.add_output(out_path);
    m.counts["queries"] = static_cast<std::int64_t>(queries.size());
    m.write(out_path);
    return 0;
  }

  if (cmd_mine->parsed()) {
    MatchConfig cfg = parse_match(match_modes, window_k);
    std::vector<CleanDocument> corpus = io::read_clean_corpus(corpus_path, lang);
    std::vector<Query> queries = io::read_queries(queries_path);
    std::vector<MinedRecord> records = mine(corpus, queries, cfg);
    write_lines(out_path, [&](std::ostream& o) { io::write_mined(records, o); });
    Manifest m = make_manifest(common, "mine");
    m.add_input(corpus_path);
    m.add_input(queries_path);
    m.add_output(out_path);
    m.counts["documents"] = static_cast<std::int64_t>(corpus.size());
    m.counts["mined"] = static_cast<std::int64_t>(records.size());
    m.write(out_path);
    return 0;
  }

  if (cmd_dedup->parsed()) {
    std::vector<MinedRecord> records = io::read_mined(mined_path, lang);
    std::vector<LabeledDataset> against;
    for (const auto& p : against_paths) against.push_back(io::read_dataset(p, lang));
    std::vector<MinedRecord> kept = dedup(records, against);
    write_lines(out_path, [&](std::ostream& o) { io::write_mined(kept, o); });
    Manifest m = make_manifest(common, "dedup");
    m.add_input(mined_path);
    for (const auto& p : against_paths) m.add_input(p);
    m.add_output(out_path);
    m.counts["input"] = static_cast<std::int64_t>(records.size());
    m.counts["kept"] = static_cast<std::int64_t>(kept.size());
    m.write(out_path);
    return 0;
  }

  if (cmd_balance->parsed()) {
    LabeledDataset base = io::read_dataset(base_path, lang, "base");
    std::vector<MinedRecord> pool = io::read_mined(pool_path, lang);
    auto [balanced, rep] = balance(base, pool, common.seed);
    write_lines(out_path, [&](std::ostream& o) { io::write_dataset(balanced, o); });
    nlohmann::json rj;
    rj["before"] = {{"off", rep.before_off}, {"not", rep.before_not}};
    rj["added"] = rep.added;
    rj["after"] = {{"off", rep.after_off}, {"not", rep.after_not}};
    rj["per_query_added"] = rep.per_query_added;
    rj["exhausted"] = rep.exhausted;
    if (!report_path.empty()) io::write_file(report_path, rj.dump(2) + "\n");
    Manifest m = make_manifest(common, "balance");
    m.add_input(base_path);
    m.add_input(pool_path);
    m.add_output(out_path);
    m.counts["before_off"] = static_cast<std::int64_t>(rep.before_off);
    m.counts["before_not"] = static_cast<std::int64_t>(rep.before_not);
    m.counts["added"] = static_cast<std::int64_t>(rep.added);
    m.counts["after_off"] = static_cast<std::int64_t>(rep.after_off);
    m.counts["after_not"] = static_cast<std::int64_t>(rep.after_not);
    m.notes["exhausted"] = rep.exhausted ? "true" : "false";
    m.write(out_path);
    return 0;
  }

  if (cmd_sample->parsed()) {
    std::vector<MinedRecord> pool = io::read_mined(pool_path, lang);
    std::string csv = sample_for_annotation(pool, sample_n, common.seed);
    io::write_file(out_path, csv);
    Manifest m = make_manifest(common, "sample-annotate");
    m.add_input(pool_path);
    m.add_output(out_path);
    m.counts["pool"] = static_cast<std::int64_t>(pool.size());
    m.counts["sampled"] = static_cast<std::int64_t>(sample_n);
    m.write(out_path);
    return 0;
  }

  if (cmd_agree->parsed()) {
    std::ifstream in(in_path);
    if (!in) throw data_error("cannot open annotation file: " + in_path);
    AgreementStats st = agreement(in);
    nlohmann::json j;
    j["n"] = st.n;
    j["both_off"] = st.both_off;
    j["both_not"] = st.both_not;
    j["disagree"] = st.disagree;
    j["both_off_frac"] = st.both_off_frac;
    j["both_not_frac"] = st.both_not_frac;
    j["disagree_frac"] = st.disagree_frac;
    j["raw_agreement"] = st.raw_agreement;
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      io::write_file(out_path, text);
      Manifest m = make_manifest(common, "agreement");
      m.add_input(in_path);
      m.add_output(out_path);
      m.counts["rows"] = static_cast<std::int64_t>(st.n);
      m.write(out_path);
    }
    return 0;
  }

  if (cmd_embed_train->parsed()) {
    embed_cfg.seed = common.seed;
    std::vector<CleanDocument> corpus = io::read_clean_corpus(corpus_path, lang);
    TrainResult res = train_embeddings(corpus, embed_cfg);
    write_lines(out_path, [&](std::ostream& o) {
      embed_binary ? save_embeddings_binary(res.table, o) : save_embeddings_text(res.table, o);
    });
    Manifest m = make_manifest(common, "train-embed");
    m.add_input(corpus_path);
    m.add_output(out_path);
    m.counts["vocab"] = static_cast<std::int64_t>(res.table.vocab.size());
    m.counts["dim"] = embed_cfg.dim;
    m.counts["epochs"] = embed_cfg.epochs;
    m.write(out_path);
    return 0;
  }

  if (cmd_embed->parsed()) {
    std::ifstream tin(table_path, std::ios::binary);
    if (!tin) throw data_error("cannot open embedding table: " + table_path);
    EmbeddingTable table = load_embeddings_text(tin, table_path);
    std::vector<CleanDocument> docs = io::read_clean_corpus(in_path, lang);
    write_lines(out_path, [&](std::ostream& o) {
      for (const auto& d : docs) {
        nlohmann::json j;
        j["id"] = d.id;
        j["vector"] = embed_doc(d, table);
        o << j.dump() << '\n';
      }
    });
    Manifest m = make_manifest(common, "embed");
    m.add_input(in_path);
    m.add_input(table_path);
    m.add_output(out_path);
    m.counts["documents"] = static_cast<std::int64_t>(docs.size());
    m.write(out_path);
    return 0;
  }

  if (cmd_svm->parsed()) {
    std::ifstream tin(table_path, std::ios::binary);
    if (!tin) throw data_error("cannot open embedding table: " + table_path);
    EmbeddingTable table = load_embeddings_text(tin, table_path);
    LabeledDataset train = io::read_dataset(train_path, lang, "train");
    TrainSet set;
    for (const auto& ex : train.examples) {
      set.X.push_back(embed_doc(ex.doc, table));
      set.y.push_back(ex.label == Label::OFF ? 1 : -1);
    }
    LinearModel model = train_svm(set, {.lambda = lambda});
    write_lines(out_path, [&](std::ostream& o) { io::save_model(model, o); });
    Manifest m = make_manifest(common, "train-svm");
    m.add_input(train_path);
    m.add_input(table_path);
    m.add_output(out_path);
    m.counts["examples"] = static_cast<std::int64_t>(set.X.size());
    m.write(out_path);
    return 0;
  }

  if (cmd_predict->parsed()) {
    LinearModel model = io::load_model(model_path);
    std::ifstream tin(table_path, std::ios::binary);
    if (!tin) throw data_error("cannot open embedding table: " + table_path);
    EmbeddingTable table = load_embeddings_text(tin, table_path);
    LabeledDataset ds;
    bool has_gold = true;
    try {
      ds = io::read_dataset(in_path, lang, "input");
    } catch (const data_error&) {
      has_gold = false;
      for (auto& d : io::read_clean_corpus(in_path, lang)) ds.examples.push_back({d, Label::NOT, ""});
    }
    std::vector<io::Prediction> preds;
    for (const auto& ex : ds.examples) {
      io::Prediction p;
      p.id = ex.doc.id;
      p.pred = predict(model, embed_doc(ex.doc, table));
      p.has_gold = has_gold;
      p.gold = ex.label;
      preds.push_back(std::move(p));
    }
    write_lines(out_path, [&](std::ostream& o) { io::write_predictions(preds, o); });
    Manifest m = make_manifest(common, "predict");
    m.add_input(model_path);
    m.add_input(table_path);
    m.add_input(in_path);
    m.add_output(out_path);
    m.counts["predictions"] = static_cast<std::int64_t>(preds.size());
    m.write(out_path);
    return 0;
  }

  if (cmd_eval->parsed()) {
    std::vector<io::Prediction> preds = io::read_predictions(in_path);
    std::vector<Label> p, g;
    for (const auto& pr : preds) {
      if (!pr.has_gold)
        throw data_error(in_path + ": prediction for '" + pr.id + "' has no gold label");
      p.push_back(pr.pred);
      g.push_back(pr.gold);
    }
    EvalReport rep = report(confusion(p, g));
    rep.model_name = model_name;
    rep.dataset_name = dataset_name;
    std::string text = render({rep}, report_format_from_string(format));
    if (out_path.empty()) {
      std::cout << text;
    } else {
      io::write_file(out_path, text);
      Manifest m = make_manifest(common, "evaluate");
      m.add_input(in_path);
      m.add_output(out_path);
      m.counts["examples"] = static_cast<std::int64_t>(preds.size());
      m.write(out_path);
    }
    return 0;
  }

  if (cmd_pipeline->parsed()) {
    if (!common.cfg) throw config_error("pipeline requires --config");
    PipelineConfig cfg = *common.cfg;
    if (common.seed_set) {
      cfg.seed = common.seed;
      cfg.embedding.seed = common.seed;
    }
    if (common.lang_set) cfg.language = lang;
    PipelineResult res = run_pipeline(cfg);
    std::cout << "mined=" << res.mined << " pool=" << res.pool << " added=" << res.balance.added
              << " train=" << res.balance.after_off + res.balance.after_not << "\n";
    std::cout << io::read_file(
        (std::filesystem::path(res.report_path).parent_path() / "report.txt").string());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lingmine::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const lingmine::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
