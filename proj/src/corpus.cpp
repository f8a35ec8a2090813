#include "tct/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tct/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tct::corpus {

size_t Dataset::category_index(const std::string& name) const {
  auto it = std::find(categories.begin(), categories.end(), name);
  if (it == categories.end()) throw DataError("unknown category: " + name);
  return static_cast<size_t>(it - categories.begin());
}

size_t Dataset::docs_in_category(const std::string& name) const {
  size_t n = 0;
  for (const auto& d : documents)
    if (d.label == name) ++n;
  return n;
}

namespace {

void check_and_finish(Dataset& ds, const std::string& path) {
  if (ds.documents.empty())
    throw DataError("empty corpus: " + path);
  std::unordered_set<std::string> seen;
  for (const auto& d : ds.documents) {
    if (d.doc.id.empty()) throw DataError("document with empty id in " + path);
    if (!seen.insert(d.doc.id).second)
      throw DataError("duplicate document id \"" + d.doc.id + "\" in " + path);
  }
}

Dataset load_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path);

  Dataset ds;
  std::unordered_set<std::string> seen_ids;
  std::unordered_set<std::string> seen_cats;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("id") ||
        !rec.contains("text") || !rec.contains("label") ||
        !rec["id"].is_string() || !rec["text"].is_string() || !rec["label"].is_string()) {
      throw DataError(path + ":" + std::to_string(lineno) + ": malformed record");
    }
    LabeledDocument d;
    d.doc.id = rec["id"].get<std::string>();
    d.doc.text = rec["text"].get<std::string>();
    d.label = rec["label"].get<std::string>();
    if (!seen_ids.insert(d.doc.id).second)
      throw DataError(path + ":" + std::to_string(lineno) + ": duplicate document id \"" +
                      d.doc.id + "\"");
    if (seen_cats.insert(d.label).second) ds.categories.push_back(d.label);
    ds.documents.push_back(std::move(d));
  }
  if (ds.documents.empty()) throw DataError("empty corpus: " + path);
  return ds;
}

Dataset load_directory(const std::string& path) {
  if (!fs::is_directory(path)) throw DataError("not a directory: " + path);

  std::vector<std::string> cats;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_directory()) cats.push_back(e.path().filename().string());
  std::sort(cats.begin(), cats.end());

  Dataset ds;
  ds.categories = cats;
  for (const auto& cat : cats) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fs::path(path) / cat))
      if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream in(f, std::ios::binary);
      if (!in) throw DataError("unreadable file: " + f.string());
      std::ostringstream text;
      text << in.rdbuf();
      ds.documents.push_back({{f.stem().string(), text.str()}, cat});
    }
  }
  check_and_finish(ds, path);
  return ds;
}

}  // namespace

Dataset load_corpus(const std::string& path, CorpusFormat format) {
  return format == CorpusFormat::jsonl ? load_jsonl(path) : load_directory(path);
}

void save_corpus(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file: " + path);
  for (const auto& d : ds.documents) {
    json rec = {{"id", d.doc.id}, {"text", d.doc.text}, {"label", d.label}};
    out << rec.dump() << '\n';
  }
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train fraction must be in (0,1)");
  if (ds.documents.empty()) throw DataError("cannot split an empty dataset");

  // Group document indices by category, preserving input order.
  std::unordered_map<std::string, std::vector<size_t>> by_cat;
  for (size_t i = 0; i < ds.documents.size(); ++i)
    by_cat[ds.documents[i].label].push_back(i);

  for (const auto& cat : ds.categories) {
    auto it = by_cat.find(cat);
    size_t n = it == by_cat.end() ? 0 : it->second.size();
    if (n > 0 && n < 2)
      throw DataError("category \"" + cat + "\" has fewer than 2 documents");
  }

  std::vector<bool> in_train(ds.documents.size(), false);
  std::mt19937_64 rng(seed);
  for (const auto& cat : ds.categories) {
    auto it = by_cat.find(cat);
    if (it == by_cat.end()) continue;
    auto idx = it->second;
    // Fisher-Yates with explicit draws; std::shuffle's draw pattern is
    // implementation-defined, this one is not.
    for (size_t i = idx.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(rng() % i);
      std::swap(idx[i - 1], idx[j]);
    }
    size_t n_train = static_cast<size_t>(
        std::ceil(train_fraction * static_cast<double>(idx.size())));
    for (size_t k = 0; k < n_train; ++k) in_train[idx[k]] = true;
  }

  Dataset train, test;
  train.categories = ds.categories;
  test.categories = ds.categories;
  for (size_t i = 0; i < ds.documents.size(); ++i)
    (in_train[i] ? train : test).documents.push_back(ds.documents[i]);
  return {std::move(train), std::move(test)};
}

}  // namespace tct::corpus
