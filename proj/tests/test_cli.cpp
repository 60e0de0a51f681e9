#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lingmine/jsonl.hpp"

// Integration tests drive the installed binary through a shell, mirroring how
// the toolkit is actually used. Paths come in through compile definitions.
#ifndef LINGMINE_CLI_BIN
#error "LINGMINE_CLI_BIN must be defined"
#endif
#ifndef LINGMINE_FIXTURE_DIR
#error "LINGMINE_FIXTURE_DIR must be defined"
#endif

namespace fs = std::filesystem;

namespace {

const std::string kBin = LINGMINE_CLI_BIN;
const fs::path kFixtures = LINGMINE_FIXTURE_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lingmine_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run(const std::string& args) {
  std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("cli: no subcommand is a usage error") {
  CHECK(run("") != 0);
}

TEST_CASE("cli: clean writes a corpus and its manifest") {
  TempDir tmp;
  std::string out = (tmp.path / "clean.jsonl").string();
  REQUIRE(run("clean --lang tr --input " + (kFixtures / "tr_raw_corpus.jsonl").string() +
              " --output " + out) == 0);
  auto docs = lingmine::io::read_clean_corpus(out, lingmine::Lang::TR);
  CHECK(docs.size() == 500);
  for (const auto& d : docs) {
    CHECK(d.text.find("http") == std::string::npos);
    CHECK(d.text.find('@') == std::string::npos);
    CHECK(d.text.find('<') == std::string::npos);
  }

  std::ifstream mf(out + ".manifest.json");
  REQUIRE(mf.good());
  auto j = nlohmann::json::parse(mf);
  CHECK(j["tool"] == "lingmine");
  CHECK(j["subcommand"] == "clean");
  CHECK(j["counts"]["documents"] == 500);
  CHECK(j["inputs"].size() == 1);
}

TEST_CASE("cli: gen-queries then mine then dedup then balance") {
  TempDir tmp;
  std::string clean = (tmp.path / "clean.jsonl").string();
  std::string queries = (tmp.path / "queries.jsonl").string();
  std::string mined = (tmp.path / "mined.jsonl").string();
  std::string pool = (tmp.path / "pool.jsonl").string();
  std::string train = (tmp.path / "train.jsonl").string();

  REQUIRE(run("clean --lang tr --input " + (kFixtures / "tr_raw_corpus.jsonl").string() +
              " --output " + clean) == 0);
  REQUIRE(run("gen-queries --lang tr --swears " + (kFixtures / "swears.txt").string() +
              " --entities " + (kFixtures / "entities.jsonl").string() + " --output " + queries) ==
          0);
  // 1 swear x 2 entities x {acc_sg, acc_pl}
  CHECK(lingmine::io::read_queries(queries).size() == 4);

  REQUIRE(run("mine --lang tr --corpus " + clean + " --queries " + queries + " --output " +
              mined) == 0);
  auto recs = lingmine::io::read_mined(mined, lingmine::Lang::TR);
  CHECK(recs.size() >= 250);

  REQUIRE(run("dedup --lang tr --mined " + mined + " --against " +
              (kFixtures / "tr_base.jsonl").string() + " --against " +
              (kFixtures / "tr_test.jsonl").string() + " --output " + pool) == 0);

  REQUIRE(run("balance --lang tr --seed 7 --base " + (kFixtures / "tr_base.jsonl").string() +
              " --pool " + pool + " --output " + train) == 0);
  auto ds = lingmine::io::read_dataset(train, lingmine::Lang::TR);
  CHECK(ds.count(lingmine::Label::OFF) == 160);
  CHECK(ds.count(lingmine::Label::NOT) == 160);
}

TEST_CASE("cli: pipeline runs end to end from a config file") {
  TempDir tmp;
  // rewrite the fixture config so the output lands in the temp dir
  std::ifstream in((kFixtures / "config.json").string());
  REQUIRE(in.good());
  auto cfg = nlohmann::json::parse(in);
  cfg["output_dir"] = (tmp.path / "out").string();
  std::string cfg_path = (tmp.path / "config.json").string();
  {
    std::ofstream out(cfg_path);
    out << cfg.dump(2) << "\n";
  }
  // fixture-relative paths must resolve against the config location
  for (const char* f :
       {"tr_raw_corpus.jsonl", "tr_base.jsonl", "tr_test.jsonl", "swears.txt", "entities.jsonl"})
    fs::copy_file(kFixtures / f, tmp.path / f);

  REQUIRE(run("pipeline --config " + cfg_path) == 0);
  for (const char* f : {"corpus.clean.jsonl", "queries.jsonl", "mined.jsonl", "pool.jsonl",
                        "train.jsonl", "embeddings.txt", "model.json", "predictions.jsonl",
                        "report.json"}) {
    CHECK(fs::exists(tmp.path / "out" / f));
    CHECK(fs::exists(tmp.path / "out" / (std::string(f) + ".manifest.json")));
  }
  // report.txt is a convenience rendering of report.json and has no manifest
  CHECK(fs::exists(tmp.path / "out" / "report.txt"));
  auto rep = nlohmann::json::parse(std::ifstream((tmp.path / "out" / "report.json").string()));
  REQUIRE(rep.is_array());
  CHECK(rep[0]["dataset"] == "augmented");
}

TEST_CASE("cli: exit code 1 for config errors, 2 for data errors") {
  TempDir tmp;
  std::string missing_cfg = (tmp.path / "nope.json").string();
  CHECK(run("pipeline --config " + missing_cfg) == 1);
  CHECK(run("pipeline") == 1);  // no config at all

  std::string bad = (tmp.path / "bad.jsonl").string();
  {
    std::ofstream out(bad);
    out << "this is not json\n";
  }
  CHECK(run("clean --lang tr --input " + bad + " --output " + (tmp.path / "o.jsonl").string()) ==
        2);
  CHECK(run("clean --lang tr --input " + (tmp.path / "absent.jsonl").string() + " --output " +
            (tmp.path / "o.jsonl").string()) == 2);
}

TEST_CASE("cli: reruns with identical inputs are byte-identical") {
  TempDir tmp;
  std::string a = (tmp.path / "a.jsonl").string();
  std::string b = (tmp.path / "b.jsonl").string();
  std::string input = (kFixtures / "tr_raw_corpus.jsonl").string();
  REQUIRE(run("clean --lang tr --input " + input + " --output " + a) == 0);
  REQUIRE(run("clean --lang tr --input " + input + " --output " + b) == 0);
  CHECK(lingmine::io::read_file(a) == lingmine::io::read_file(b));

  std::string qa = (tmp.path / "qa.jsonl").string();
  std::string qb = (tmp.path / "qb.jsonl").string();
  std::string gen = "gen-queries --lang tr --swears " + (kFixtures / "swears.txt").string() +
                    " --entities " + (kFixtures / "entities.jsonl").string() + " --output ";
  REQUIRE(run(gen + qa) == 0);
  REQUIRE(run(gen + qb) == 0);
  CHECK(lingmine::io::read_file(qa) == lingmine::io::read_file(qb));
}

TEST_CASE("cli: evaluate renders the csv report from predictions") {
  TempDir tmp;
  std::string preds = (tmp.path / "preds.jsonl").string();
  {
    std::ofstream out(preds);
    for (int i = 0; i < 86; ++i)
      out << R"({"id":"a)" << i << R"(","pred":"OFF","gold":"OFF"})" << "\n";
    for (int i = 0; i < 14; ++i)
      out << R"({"id":"b)" << i << R"(","pred":"NOT","gold":"OFF"})" << "\n";
    for (int i = 0; i < 10; ++i)
      out << R"({"id":"c)" << i << R"(","pred":"OFF","gold":"NOT"})" << "\n";
    for (int i = 0; i < 90; ++i)
      out << R"({"id":"d)" << i << R"(","pred":"NOT","gold":"NOT"})" << "\n";
  }
  std::string rep = (tmp.path / "report.csv").string();
  REQUIRE(run("evaluate --preds " + preds + " --format csv --model-name m --dataset-name d "
              "--output " + rep) == 0);
  std::string text = lingmine::io::read_file(rep);
  CHECK(text.find("m,d,86.00,88.00,88.00") != std::string::npos);
}
