#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lingmine/augment.hpp"
#include "lingmine/core.hpp"
#include "lingmine/miner.hpp"
#include "lingmine/morphology.hpp"
#include "lingmine/querygen.hpp"
#include "lingmine/svm.hpp"
#include "lingmine/textproc.hpp"

namespace lingmine::io {

using nlohmann::json;

namespace jsonl_detail {

inline json parse_line(const std::string& line, const std::string& path, std::size_t lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw data_error(path + ":" + std::to_string(lineno) + ": invalid JSON object");
  return j;
}

template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(parse_line(line, path, lineno), lineno);
  }
}

inline std::string require_string(const json& j, const char* key, const std::string& path,
                                  std::size_t lineno) {
  if (!j.contains(key) || !j[key].is_string())
    throw data_error(path + ":" + std::to_string(lineno) + ": missing string field \"" +
                     key + "\"");
  return j[key].get<std::string>();
}

}  // namespace jsonl_detail

// {"id": ..., "text": ...} per line
inline std::vector<RawDocument> read_raw_corpus(const std::string& path, Lang lang) {
  std::vector<RawDocument> docs;
  std::unordered_set<std::string> ids;
  jsonl_detail::for_each_line(path, [&](const json& j, std::size_t lineno) {
    RawDocument d;
    d.id = jsonl_detail::require_string(j, "id", path, lineno);
    d.text = jsonl_detail::require_string(j, "text", path, lineno);
    d.lang = lang;
    if (d.id.empty())
      throw data_error(path + ":" + std::to_string(lineno) + ": empty document id");
    if (!ids.insert(d.id).second)
      throw data_error(path + ":" + std::to_string(lineno) + ": duplicate document id '" +
                       d.id + "'");
    docs.push_back(std::move(d));
  });
  return docs;
}

// cleaned corpus adds "tokens": [...]
inline void write_clean_corpus(const std::vector<CleanDocument>& docs, std::ostream& out) {
  for (const auto& d : docs) {
    json j;
    j["id"] = d.id;
    j["text"] = d.text;
    j["tokens"] = d.tokens;
    out << j.dump() << '\n';
  }
}

inline std::vector<CleanDocument> read_clean_corpus(const std::string& path, Lang lang) {
  std::vector<CleanDocument> docs;
  jsonl_detail::for_each_line(path, [&](const json& j, std::size_t lineno) {
    CleanDocument d;
    d.id = jsonl_detail::require_string(j, "id", path, lineno);
    d.text = jsonl_detail::require_string(j, "text", path, lineno);
    d.lang = lang;
    if (j.contains("tokens")) {
      for (const auto& t : j["tokens"]) d.tokens.push_back(t.get<std::string>());
    } else {
      std::istringstream ss(d.text);
      std::string tok;
      while (ss >> tok) d.tokens.push_back(tok);
    }
    docs.push_back(std::move(d));
  });
  return docs;
}

// {"lemma": ..., "voicing_exception": bool?, "extra_forms": [...]?}
inline std::vector<Entity> read_entities(const std::string& path) {
  std::vector<Entity> out;
  jsonl_detail::for_each_line(path, [&](const json& j, std::size_t lineno) {
    Entity e;
    e.lemma = jsonl_detail::require_string(j, "lemma", path, lineno);
    if (j.contains("voicing_exception")) e.voicing_exception = j["voicing_exception"].get<bool>();
    if (j.contains("extra_forms"))
      for (const auto& f : j["extra_forms"]) e.extra_forms.push_back(f.get<std::string>());
    out.push_back(std::move(e));
  });
  return out;
}

// one token per line, '#' comments
inline std::vector<std::string> read_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open word list: " + path);
  std::vector<std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of(" \t") != std::string::npos)
      throw data_error(path + ":" + std::to_string(lineno) + ": expected a single token");
    out.push_back(line);
  }
  return out;
}

inline void write_queries(const std::vector<Query>& qs, std::ostream& out) {
  for (const auto& q : qs) {
    json j;
    j["id"] = q.id;
    j["pattern"] = to_string(q.pattern);
    j["ow"] = q.ow;
    if (!q.pronoun.empty()) j["pronoun"] = q.pronoun;
    if (!q.entity_form.empty()) j["entity_form"] = q.entity_form;
    if (!q.source_entity.empty()) j["source_entity"] = q.source_entity;
    out << j.dump() << '\n';
  }
}

inline std::vector<Query> read_queries(const std::string& path) {
  std::vector<Query> out;
  jsonl_detail::for_each_line(path, [&](const json& j, std::size_t lineno) {
    Query q;
    q.pattern = pattern_from_string(jsonl_detail::require_string(j, "pattern", path, lineno));
    q.ow = jsonl_detail::require_string(j, "ow", path, lineno);
    if (j.contains("pronoun")) q.pronoun = j["pronoun"].get<std::string>();
    if (j.contains("entity_form")) q.entity_form = j["entity_form"].get<std::string>();
    if (j.contains("source_entity")) q.source_entity = j["source_entity"].get<std::string>();
    q.id = j.contains("id") ? j["id"].get<std::string>()
                            : Query::make_id(q.pattern, q.ow, q.pronoun, q.entity_form);
    out.push_back(std::move(q));
  });
  return out;
}

// {"id","text","query","pattern","label":"OFF"}
inline void write_mined(const std::vector<MinedRecord>& records, std::ostream& out) {
  for (const auto& r : records) {
    json j;
    j["id"] = r.doc.id;
    j["text"] = r.doc.text;
    j["tokens"] = r.doc.tokens;
    j["query"] = r.query_id;
    j["pattern"] = to_string(r.pattern);
    j["label"] = "OFF";
    out << j.dump() << '\n';
  }
}

inline std::vector<MinedRecord> read_mined(const std::string& path, Lang lang) {
  std::vector<MinedRecord> out;
  jsonl_detail::for_each_line(path, [&](const json& j, std::size_t lineno) {
    MinedRecord r;
    r.doc.id = jsonl_detail::require_string(j, "id", path, lineno);
    r.doc.text = jsonl_detail::require_string(j, "text", path, lineno);
    r.doc.lang = lang;
    if (j.contains("tokens"))
      for (const auto& t : j["tokens"]) r.doc.tokens.push_back(t.get<std::string>());
    else {
      std::istringstream ss(r.doc.text);
      std::string tok;
      while (ss >> tok) r.doc.tokens.push_back(tok);
    }
    r.query_id = jsonl_detail::require_string(j, "query", path, lineno);
    r.pattern = pattern_from_string(jsonl_detail::require_string(j, "pattern", path, lineno));
    out.push_back(std::move(r));
  });
  return out;
}

// {"id","text","label","source"}
inline void write_dataset(const LabeledDataset& ds, std::ostream& out) {
  for (const auto& ex : ds.examples) {
    json j;
    j["id"] = ex.doc.id;
    j["text"] = ex.doc.text;
    j["tokens"] = ex.doc.tokens;
    j["label"] = to_string(ex.label);
    j["source"] = ex.source;
    out << j.dump() << '\n';
  }
}

inline LabeledDataset read_dataset(const std::string& path, Lang lang,
                                   const std::string& name = "") {
  LabeledDataset ds;
  ds.name = name.empty() ? path : name;
  jsonl_detail::for_each_line(path, [&](const json& j, std::size_t lineno) {
    LabeledExample ex;
    ex.doc.id = jsonl_detail::require_string(j, "id", path, lineno);
    ex.doc.text = jsonl_detail::require_string(j, "text", path, lineno);
    ex.doc.lang = lang;
    if (j.contains("tokens"))
      for (const auto& t : j["tokens"]) ex.doc.tokens.push_back(t.get<std::string>());
    else {
      std::istringstream ss(ex.doc.text);
      std::string tok;
      while (ss >> tok) ex.doc.tokens.push_back(tok);
    }
    try {
      ex.label = label_from_string(jsonl_detail::require_string(j, "label", path, lineno));
    } catch (const data_error&) {
      throw data_error(path + ":" + std::to_string(lineno) + ": invalid label");
    }
    if (j.contains("source")) ex.source = j["source"].get<std::string>();
    ds.examples.push_back(std::move(ex));
  });
  return ds;
}

// model file: {"dim","lambda","bias","weights":[...]}
inline void save_model(const LinearModel& m, std::ostream& out) {
  json j;
  j["dim"] = m.dim();
  j["lambda"] = m.lambda;
  j["bias"] = m.b;
  j["weights"] = m.w;
  out << j.dump(2) << '\n';
}

inline LinearModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open model file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("weights"))
    throw data_error(path + ": malformed model file");
  LinearModel m;
  m.b = j.value("bias", 0.0);
  m.lambda = j.value("lambda", 1.0);
  for (const auto& w : j["weights"]) m.w.push_back(w.get<double>());
  if (j.contains("dim") && j["dim"].get<int>() != m.dim())
    throw data_error(path + ": dim field disagrees with weight count");
  return m;
}

// predictions: {"id","pred","gold"?}
struct Prediction {
  std::string id;
  Label pred = Label::NOT;
  bool has_gold = false;
  Label gold = Label::NOT;
};

inline void write_predictions(const std::vector<Prediction>& preds, std::ostream& out) {
  for (const auto& p : preds) {
    json j;
    j["id"] = p.id;
    j["pred"] = to_string(p.pred);
    if (p.has_gold) j["gold"] = to_string(p.gold);
    out << j.dump() << '\n';
  }
}

inline std::vector<Prediction> read_predictions(const std::string& path) {
  std::vector<Prediction> out;
  jsonl_detail::for_each_line(path, [&](const json& j, std::size_t lineno) {
    Prediction p;
    p.id = jsonl_detail::require_string(j, "id", path, lineno);
    try {
      p.pred = label_from_string(jsonl_detail::require_string(j, "pred", path, lineno));
      if (j.contains("gold")) {
        p.has_gold = true;
        p.gold = label_from_string(j["gold"].get<std::string>());
      }
    } catch (const data_error&) {
      throw data_error(path + ":" + std::to_string(lineno) + ": invalid label");
    }
    out.push_back(std::move(p));
  });
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write file: " + path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lingmine::io
