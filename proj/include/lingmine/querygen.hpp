#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "lingmine/core.hpp"
#include "lingmine/morphology.hpp"

namespace lingmine {

enum class QueryPattern { TURKISH_SUFFIXED, LOOSE_ORDER, STRICT_ORDER, NO_PRONOUN, OW_ONLY };

inline std::string to_string(QueryPattern p) {
  switch (p) {
    case QueryPattern::TURKISH_SUFFIXED: return "turkish_suffixed";
    case QueryPattern::LOOSE_ORDER: return "loose_order";
    case QueryPattern::STRICT_ORDER: return "strict_order";
    case QueryPattern::NO_PRONOUN: return "no_pronoun";
    case QueryPattern::OW_ONLY: return "ow_only";
  }
  throw data_error("unknown query pattern");
}

inline QueryPattern pattern_from_string(std::string_view s) {
  if (s == "turkish_suffixed") return QueryPattern::TURKISH_SUFFIXED;
  if (s == "loose_order") return QueryPattern::LOOSE_ORDER;
  if (s == "strict_order") return QueryPattern::STRICT_ORDER;
  if (s == "no_pronoun") return QueryPattern::NO_PRONOUN;
  if (s == "ow_only") return QueryPattern::OW_ONLY;
  throw data_error("unknown query pattern: '" + std::string(s) + "'");
}

struct Query {
  QueryPattern pattern = QueryPattern::OW_ONLY;
  std::string ow;
  std::string pronoun;        // empty when the pattern has none
  std::string entity_form;    // empty for OW_ONLY
  std::string source_entity;  // lemma the entity_form was generated from
  std::string id;             // kind|ow|pronoun|entity_form, empty slots elided

  static std::string make_id(QueryPattern p, const std::string& ow, const std::string& pronoun,
                             const std::string& entity_form) {
    std::string id = to_string(p) + "|" + ow;
    if (!pronoun.empty()) id += "|" + pronoun;
    if (!entity_form.empty()) id += "|" + entity_form;
    return id;
  }
};

namespace query_detail {

inline void sort_dedup(std::vector<Query>& qs) {
  std::sort(qs.begin(), qs.end(), [](const Query& a, const Query& b) { return a.id < b.id; });
  qs.erase(std::unique(qs.begin(), qs.end(),
                       [](const Query& a, const Query& b) { return a.id == b.id; }),
           qs.end());
}

}  // namespace query_detail

// One ACC_SG and one ACC_PL query per (swear, entity) pair.
inline std::vector<Query> generate_turkish(const std::vector<std::string>& swears,
                                           const std::vector<Entity>& entities,
                                           bool include_bare_forms = false) {
  if (swears.empty()) throw data_error("generate_turkish: empty swear list");
  if (entities.empty()) throw data_error("generate_turkish: empty entity list");
  std::vector<Query> out;
  for (const Entity& e : entities) {
    std::vector<std::string> forms = {accusative_singular(e).text, accusative_plural(e).text};
    if (include_bare_forms) {
      forms.push_back(e.lemma);
      forms.push_back(plural(e).text);
    }
    for (const std::string& swear : swears) {
      for (const std::string& form : forms) {
        Query q;
        q.pattern = QueryPattern::TURKISH_SUFFIXED;
        q.ow = swear;
        q.entity_form = form;
        q.source_entity = e.lemma;
        q.id = Query::make_id(q.pattern, q.ow, q.pronoun, q.entity_form);
        out.push_back(std::move(q));
      }
    }
  }
  query_detail::sort_dedup(out);
  return out;
}

// English OW/P/E pattern families.
inline std::vector<Query> generate_english(const std::vector<std::string>& ows,
                                           const std::vector<std::string>& pronouns,
                                           const std::vector<std::string>& entities,
                                           const std::set<QueryPattern>& kinds) {
  if (kinds.empty()) throw data_error("generate_english: no pattern kinds requested");
  if (ows.empty()) throw data_error("generate_english: empty offensive-word list");
  std::vector<Query> out;
  for (QueryPattern kind : kinds) {
    bool needs_pronoun = kind == QueryPattern::LOOSE_ORDER || kind == QueryPattern::STRICT_ORDER;
    bool needs_entity = needs_pronoun || kind == QueryPattern::NO_PRONOUN;
    if (kind == QueryPattern::TURKISH_SUFFIXED)
      throw data_error("generate_english: turkish_suffixed is not an English pattern");
    if (needs_pronoun && pronouns.empty())
      throw data_error("generate_english: " + to_string(kind) + " requires a pronoun list");
    if (needs_entity && entities.empty())
      throw data_error("generate_english: " + to_string(kind) + " requires an entity list");
    for (const std::string& ow : ows) {
      if (kind == QueryPattern::OW_ONLY) {
        Query q;
        q.pattern = kind;
        q.ow = ow;
        q.id = Query::make_id(kind, ow, "", "");
        out.push_back(std::move(q));
        continue;
      }
      for (const std::string& e : entities) {
        if (kind == QueryPattern::NO_PRONOUN) {
          Query q;
          q.pattern = kind;
          q.ow = ow;
          q.entity_form = e;
          q.id = Query::make_id(kind, ow, "", e);
          out.push_back(std::move(q));
          continue;
        }
        for (const std::string& p : pronouns) {
          Query q;
          q.pattern = kind;
          q.ow = ow;
          q.pronoun = p;
          q.entity_form = e;
          q.id = Query::make_id(kind, ow, p, e);
          out.push_back(std::move(q));
        }
      }
    }
  }
  query_detail::sort_dedup(out);
  return out;
}

}  // namespace lingmine
