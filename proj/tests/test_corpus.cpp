#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <unistd.h>

#include "tct/corpus.hpp"
#include "tct/error.hpp"

using namespace tct;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tct_corpus_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << content;
}

}  // namespace

TEST_CASE("jsonl load keeps document order and first-appearance categories") {
  TempDir tmp;
  auto file = tmp.path / "c.jsonl";
  write_file(file,
             R"({"id":"d1","text":"goal ball","label":"sport"})" "\n"
             R"({"id":"d2","text":"match","label":"sport"})" "\n"
             R"({"id":"d3","text":"market","label":"economy"})" "\n");
  auto ds = corpus::load_corpus(file.string(), corpus::CorpusFormat::jsonl);
  CHECK(ds.documents.size() == 3);
  CHECK(ds.categories == std::vector<std::string>{"sport", "economy"});
  CHECK(ds.documents[0].doc.id == "d1");
  CHECK(ds.documents[2].label == "economy");
}

TEST_CASE("duplicate id reported with offending line") {
  TempDir tmp;
  auto file = tmp.path / "dup.jsonl";
  write_file(file,
             R"({"id":"d0","text":"a","label":"x"})" "\n"
             R"({"id":"d1","text":"b","label":"x"})" "\n"
             R"({"id":"d2","text":"c","label":"y"})" "\n"
             R"({"id":"d3","text":"d","label":"y"})" "\n"
             R"({"id":"d1","text":"e","label":"y"})" "\n");
  try {
    corpus::load_corpus(file.string(), corpus::CorpusFormat::jsonl);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("d1") != std::string::npos);
    CHECK(msg.find(":5") != std::string::npos);
  }
}

TEST_CASE("malformed line reported with line number") {
  TempDir tmp;
  auto file = tmp.path / "bad.jsonl";
  write_file(file, R"({"id":"d0","text":"a","label":"x"})" "\nnot json\n");
  CHECK_THROWS_WITH_AS(corpus::load_corpus(file.string(), corpus::CorpusFormat::jsonl),
                       doctest::Contains(":2"), DataError);
}

TEST_CASE("empty corpus is an error") {
  TempDir tmp;
  auto file = tmp.path / "empty.jsonl";
  write_file(file, "");
  CHECK_THROWS_AS(corpus::load_corpus(file.string(), corpus::CorpusFormat::jsonl),
                  DataError);
}

TEST_CASE("directory importer uses lexicographic category order") {
  TempDir tmp;
  auto root = tmp.path / "corpus";
  write_file(root / "sport" / "s1.txt", "ball");
  write_file(root / "sport" / "s2.txt", "goal");
  write_file(root / "economy" / "e1.txt", "market");
  auto ds = corpus::load_corpus(root.string(), corpus::CorpusFormat::directory);
  CHECK(ds.categories == std::vector<std::string>{"economy", "sport"});
  CHECK(ds.documents.size() == 3);
  CHECK(ds.documents[0].doc.id == "e1");
  CHECK(ds.documents[0].doc.text == "market");
}

TEST_CASE("load / save / load round-trips (id, text, label)") {
  TempDir tmp;
  auto file = tmp.path / "c.jsonl";
  write_file(file,
             R"({"id":"d1","text":"سلام دنیا","label":"a"})" "\n"
             R"({"id":"d2","text":"","label":"b"})" "\n");
  auto ds = corpus::load_corpus(file.string(), corpus::CorpusFormat::jsonl);
  auto out = tmp.path / "out.jsonl";
  corpus::save_corpus(ds, out.string());
  auto ds2 = corpus::load_corpus(out.string(), corpus::CorpusFormat::jsonl);
  REQUIRE(ds2.documents.size() == ds.documents.size());
  for (size_t i = 0; i < ds.documents.size(); ++i) {
    CHECK(ds2.documents[i].doc.id == ds.documents[i].doc.id);
    CHECK(ds2.documents[i].doc.text == ds.documents[i].doc.text);
    CHECK(ds2.documents[i].label == ds.documents[i].label);
  }
  CHECK(ds2.categories == ds.categories);
}

namespace {

corpus::Dataset tiny_dataset(size_t per_cat, const std::vector<std::string>& cats) {
  corpus::Dataset ds;
  ds.categories = cats;
  for (const auto& c : cats)
    for (size_t i = 0; i < per_cat; ++i)
      ds.documents.push_back({{c + std::to_string(i), "text"}, c});
  return ds;
}

}  // namespace

TEST_CASE("split is stratified, deterministic, and a partition") {
  auto ds = tiny_dataset(5, {"a", "b"});
  auto [train, test] = corpus::split(ds, 0.6, 42);
  CHECK(train.docs_in_category("a") == 3);
  CHECK(train.docs_in_category("b") == 3);
  CHECK(test.docs_in_category("a") == 2);
  CHECK(test.docs_in_category("b") == 2);

  auto [train2, test2] = corpus::split(ds, 0.6, 42);
  for (size_t i = 0; i < train.documents.size(); ++i)
    CHECK(train2.documents[i].doc.id == train.documents[i].doc.id);

  // Partition: no overlap, everything accounted for.
  CHECK(train.documents.size() + test.documents.size() == ds.documents.size());
  std::set<std::string> train_ids;
  for (const auto& d : train.documents) train_ids.insert(d.doc.id);
  for (const auto& d : test.documents) CHECK(train_ids.count(d.doc.id) == 0);
}

TEST_CASE("split partitions for a sweep of seeds") {
  auto ds = tiny_dataset(7, {"a", "b", "c"});
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto [train, test] = corpus::split(ds, 0.5, seed);
    CHECK(train.documents.size() + test.documents.size() == ds.documents.size());
    std::set<std::string> seen;
    for (const auto& d : train.documents) seen.insert(d.doc.id);
    for (const auto& d : test.documents) CHECK(seen.insert(d.doc.id).second);
    CHECK(seen.size() == ds.documents.size());
  }
}

TEST_CASE("ceiling rule: 115 docs at fraction 0.637 gives 74 train") {
  auto ds = tiny_dataset(115, {"Society", "Other"});
  auto [train, test] = corpus::split(ds, 0.637, 1);
  CHECK(train.docs_in_category("Society") == 74);
  CHECK(test.docs_in_category("Society") == 41);
}

TEST_CASE("split rejects bad inputs") {
  auto ds = tiny_dataset(5, {"a", "b"});
  CHECK_THROWS_AS(corpus::split(ds, 0.0, 0), ConfigError);
  CHECK_THROWS_AS(corpus::split(ds, 1.0, 0), ConfigError);

  corpus::Dataset lonely;
  lonely.categories = {"a", "b"};
  lonely.documents.push_back({{"d1", "x"}, "a"});
  lonely.documents.push_back({{"d2", "x"}, "b"});
  lonely.documents.push_back({{"d3", "x"}, "b"});
  CHECK_THROWS_WITH_AS(corpus::split(lonely, 0.5, 0), doctest::Contains("a"), DataError);
}
