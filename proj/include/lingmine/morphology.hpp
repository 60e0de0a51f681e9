#pragma once

#include <string>
#include <vector>

#include "lingmine/core.hpp"
#include "lingmine/utf8.hpp"

namespace lingmine {

struct Entity {
  std::string lemma;               // lowercase Turkish
  bool voicing_exception = false;  // stem never voices
  std::vector<std::string> extra_forms;
};

enum class FormKind { LEMMA, ACC_SG, PL, ACC_PL, MANUAL };

struct SurfaceForm {
  std::string text;
  FormKind form = FormKind::LEMMA;
};

namespace morph_detail {

constexpr char32_t kDotlessI = 0x0131;  // ı
constexpr char32_t kOUml = 0x00F6;      // ö
constexpr char32_t kUUml = 0x00FC;      // ü
constexpr char32_t kCCedil = 0x00E7;    // ç
constexpr char32_t kSoftG = 0x011F;     // ğ

inline bool is_vowel(char32_t cp) {
  return cp == U'a' || cp == U'e' || cp == kDotlessI || cp == U'i' || cp == U'o' ||
         cp == kOUml || cp == U'u' || cp == kUUml;
}

inline std::size_t vowel_count(const std::vector<char32_t>& cps) {
  std::size_t n = 0;
  for (char32_t cp : cps)
    if (is_vowel(cp)) ++n;
  return n;
}

inline char32_t last_vowel(const std::vector<char32_t>& cps, const std::string& lemma) {
  for (auto it = cps.rbegin(); it != cps.rend(); ++it)
    if (is_vowel(*it)) return *it;
  throw data_error("entity '" + lemma + "' has no Turkish vowel");
}

// fourfold harmony: a,ı -> ı ; e,i -> i ; o,u -> u ; ö,ü -> ü
inline char32_t fourfold(char32_t v) {
  if (v == U'a' || v == kDotlessI) return kDotlessI;
  if (v == U'e' || v == U'i') return U'i';
  if (v == U'o' || v == U'u') return U'u';
  return kUUml;
}

inline bool back_vowel(char32_t v) {
  return v == U'a' || v == kDotlessI || v == U'o' || v == U'u';
}

inline char32_t voiced(char32_t c) {
  if (c == U'p') return U'b';
  if (c == kCCedil) return U'c';
  if (c == U't') return U'd';
  return kSoftG;  // k
}

inline bool is_final_stop(char32_t c) {
  return c == U'p' || c == kCCedil || c == U't' || c == U'k';
}

inline std::vector<char32_t> checked_lemma(const Entity& e) {
  if (e.lemma.empty()) throw data_error("entity lemma is empty");
  std::vector<char32_t> cps = utf8::decode(e.lemma);
  last_vowel(cps, e.lemma);  // throws if vowel-less
  return cps;
}

}  // namespace morph_detail

// Accusative singular: fourfold harmony vowel, `y` buffer after a vowel-final
// stem, final-stop voicing (p/ç/t/k -> b/c/d/ğ) on polysyllabic stems.
inline SurfaceForm accusative_singular(const Entity& e) {
  using namespace morph_detail;
  std::vector<char32_t> cps = checked_lemma(e);
  char32_t suffix = fourfold(last_vowel(cps, e.lemma));
  if (is_vowel(cps.back())) {
    cps.push_back(U'y');
  } else if (is_final_stop(cps.back()) && vowel_count(cps) >= 2 && !e.voicing_exception) {
    cps.back() = voiced(cps.back());
  }
  cps.push_back(suffix);
  return {utf8::encode(cps), FormKind::ACC_SG};
}

// Plural: -lar after a back vowel, -ler otherwise. Consonant-initial suffix,
// so the stem never voices.
inline SurfaceForm plural(const Entity& e) {
  using namespace morph_detail;
  std::vector<char32_t> cps = checked_lemma(e);
  bool back = back_vowel(last_vowel(cps, e.lemma));
  std::string text = utf8::encode(cps) + (back ? "lar" : "ler");
  return {text, FormKind::PL};
}

// Accusative plural: plural stem + harmony vowel. `lar`/`ler` end in a
// consonant, so no buffer is needed.
inline SurfaceForm accusative_plural(const Entity& e) {
  using namespace morph_detail;
  SurfaceForm pl = plural(e);
  bool back = back_vowel(last_vowel(checked_lemma(e), e.lemma));
  std::string text = pl.text + (back ? utf8::encode_one(kDotlessI) : "i");
  return {text, FormKind::ACC_PL};
}

// LEMMA, ACC_SG, PL, ACC_PL then any manual extra forms, deduplicated with
// first occurrence winning.
inline std::vector<SurfaceForm> all_forms(const Entity& e) {
  std::vector<SurfaceForm> out;
  out.push_back({e.lemma, FormKind::LEMMA});
  out.push_back(accusative_singular(e));
  out.push_back(plural(e));
  out.push_back(accusative_plural(e));
  for (const std::string& f : e.extra_forms) out.push_back({f, FormKind::MANUAL});
  std::vector<SurfaceForm> dedup;
  for (auto& sf : out) {
    bool seen = false;
    for (auto& d : dedup)
      if (d.text == sf.text) {
        seen = true;
        break;
      }
    if (!seen) dedup.push_back(sf);
  }
  return dedup;
}

}  // namespace lingmine
