#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "lingmine/augment.hpp"

using namespace lingmine;

namespace {

LabeledExample ex(std::string id, std::string text, Label label, std::string source = "base") {
  LabeledExample e;
  e.doc.id = std::move(id);
  e.doc.text = std::move(text);
  e.label = label;
  e.source = std::move(source);
  return e;
}

MinedRecord rec(std::string id, std::string text, std::string query = "q0") {
  MinedRecord r;
  r.doc.id = std::move(id);
  r.doc.text = std::move(text);
  r.query_id = std::move(query);
  return r;
}

LabeledDataset synthetic(std::size_t off, std::size_t not_, const std::string& tag) {
  LabeledDataset ds;
  ds.name = tag;
  for (std::size_t i = 0; i < off; ++i)
    ds.examples.push_back(ex(tag + "-o" + std::to_string(i), tag + " off metin " + std::to_string(i),
                             Label::OFF));
  for (std::size_t i = 0; i < not_; ++i)
    ds.examples.push_back(ex(tag + "-n" + std::to_string(i), tag + " not metin " + std::to_string(i),
                             Label::NOT));
  return ds;
}

}  // namespace

TEST_CASE("merge concatenates disjoint datasets") {
  LabeledDataset a = synthetic(1, 2, "a"), b = synthetic(2, 2, "b");
  auto res = merge({a, b});
  CHECK(res.dataset.examples.size() == 7);
  CHECK(res.label_conflicts == 0);
}

TEST_CASE("merge dedups identical texts, first occurrence wins") {
  LabeledDataset a, b;
  a.examples.push_back(ex("a1", "aynı metin", Label::OFF));
  a.examples.push_back(ex("a2", "farklı", Label::NOT));
  a.examples.push_back(ex("a3", "bir daha", Label::NOT));
  b.examples.push_back(ex("b1", "aynı metin", Label::OFF));
  b.examples.push_back(ex("b2", "yeni bir", Label::NOT));
  b.examples.push_back(ex("b3", "son metin", Label::NOT));
  b.examples.push_back(ex("b4", "dördüncü", Label::NOT));
  auto res = merge({a, b});
  CHECK(res.dataset.examples.size() == 6);
  CHECK(res.label_conflicts == 0);
}

TEST_CASE("merge conflict keeps first label and counts a warning") {
  LabeledDataset a, b;
  a.examples.push_back(ex("a1", "tartışmalı metin", Label::OFF));
  b.examples.push_back(ex("b1", "tartışmalı metin", Label::NOT));
  auto res = merge({a, b});
  REQUIRE(res.dataset.examples.size() == 1);
  CHECK(res.dataset.examples[0].label == Label::OFF);
  CHECK(res.label_conflicts == 1);
}

TEST_CASE("balance reaches exact parity with a sufficient pool") {
  LabeledDataset base = synthetic(5404, 22596, "tr");
  std::vector<MinedRecord> pool;
  for (std::size_t i = 0; i < 20000; ++i)
    pool.push_back(rec("m" + std::to_string(i), "madenci metin " + std::to_string(i),
                       "q" + std::to_string(i % 7)));
  auto [out, rep] = balance(base, pool, 42);
  CHECK(rep.before_off == 5404);
  CHECK(rep.before_not == 22596);
  CHECK(rep.added == 17192);
  CHECK(rep.after_off == 22596);
  CHECK(rep.after_not == 22596);
  CHECK(out.count(Label::OFF) == 22596);
  CHECK(out.count(Label::NOT) == 22596);
  CHECK_FALSE(rep.exhausted);
}

TEST_CASE("olid deficit arithmetic") {
  LabeledDataset base = synthetic(4400, 8840, "en");
  auto [out, rep] = balance(base, {}, 1);
  CHECK(rep.before_not - rep.before_off == 4440);
  CHECK(rep.added == 0);
  CHECK(rep.exhausted);
}

TEST_CASE("balance with a short pool adds everything and flags exhaustion") {
  LabeledDataset base = synthetic(0, 10, "s");
  std::vector<MinedRecord> pool;
  for (int i = 0; i < 4; ++i) pool.push_back(rec("m" + std::to_string(i), "m " + std::to_string(i)));
  auto [out, rep] = balance(base, pool, 9);
  CHECK(rep.added == 4);
  CHECK(rep.exhausted);
  CHECK(out.examples.size() == 14);
}

TEST_CASE("balance never removes or relabels base examples") {
  LabeledDataset base = synthetic(2, 6, "b");
  std::vector<MinedRecord> pool;
  for (int i = 0; i < 10; ++i)
    pool.push_back(rec("m" + std::to_string(i), "p " + std::to_string(i)));
  auto [out, rep] = balance(base, pool, 3);
  REQUIRE(out.examples.size() >= base.examples.size());
  for (std::size_t i = 0; i < base.examples.size(); ++i) {
    CHECK(out.examples[i].doc.id == base.examples[i].doc.id);
    CHECK(out.examples[i].label == base.examples[i].label);
  }
  for (std::size_t i = base.examples.size(); i < out.examples.size(); ++i) {
    CHECK(out.examples[i].label == Label::OFF);
    CHECK(out.examples[i].source == "mined");
  }
}

TEST_CASE("round-robin keeps per-query counts within one of each other") {
  LabeledDataset base = synthetic(0, 11, "r");
  std::vector<MinedRecord> pool;
  for (int q = 0; q < 3; ++q)
    for (int i = 0; i < 10; ++i)
      pool.push_back(rec("q" + std::to_string(q) + "-" + std::to_string(i),
                         "text " + std::to_string(q) + " " + std::to_string(i),
                         "query" + std::to_string(q)));
  auto [out, rep] = balance(base, pool, 5);
  CHECK(rep.added == 11);
  std::size_t lo = SIZE_MAX, hi = 0;
  for (auto& [q, c] : rep.per_query_added) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(hi - lo <= 1);
}

TEST_CASE("annotation sampling is deterministic and size-checked") {
  std::vector<MinedRecord> pool;
  for (int i = 0; i < 250; ++i)
    pool.push_back(rec("m" + std::to_string(i), "metin " + std::to_string(i)));
  std::string a = sample_for_annotation(pool, 100, 77);
  std::string b = sample_for_annotation(pool, 100, 77);
  CHECK(a == b);
  // 100 data rows + header
  CHECK(std::count(a.begin(), a.end(), '\n') == 101);
  CHECK(a.rfind("id,text,annotator_a,annotator_b\n", 0) == 0);

  CHECK(sample_for_annotation(pool, 0, 1) == "id,text,annotator_a,annotator_b\n");
  CHECK_THROWS_AS(sample_for_annotation(pool, 251, 1), data_error);
}

TEST_CASE("agreement fractions match the count arithmetic") {
  std::string csv = "id,text,annotator_a,annotator_b\n";
  for (int i = 0; i < 95; ++i) csv += "a" + std::to_string(i) + ",t,OFF,OFF\n";
  for (int i = 0; i < 2; ++i) csv += "b" + std::to_string(i) + ",t,NOT,NOT\n";
  for (int i = 0; i < 3; ++i) csv += "c" + std::to_string(i) + ",t,OFF,NOT\n";
  std::istringstream in(csv);
  AgreementStats st = agreement(in);
  CHECK(st.n == 100);
  CHECK(st.both_off == 95);
  CHECK(st.both_not == 2);
  CHECK(st.disagree == 3);
  CHECK(st.both_not_frac == Catch::Approx(0.02));
  CHECK(st.raw_agreement == Catch::Approx(0.97));
}

TEST_CASE("agreement degenerate cases") {
  std::istringstream all_off("id,text,annotator_a,annotator_b\nx,t,OFF,OFF\ny,t,OFF,OFF\n");
  AgreementStats st = agreement(all_off);
  CHECK(st.both_not_frac == 0.0);
  CHECK(st.raw_agreement == 1.0);

  std::istringstream one_disagree("id,text,annotator_a,annotator_b\nx,t,OFF,NOT\n");
  CHECK(agreement(one_disagree).raw_agreement == 0.0);
}

TEST_CASE("agreement reports the row of an invalid label") {
  std::istringstream bad("id,text,annotator_a,annotator_b\nx,t,OFF,OFF\ny,t,OFF,\n");
  try {
    agreement(bad);
    FAIL("expected data_error");
  } catch (const data_error& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}
