#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tct::corpus {

struct Document {
  std::string id;
  std::string text;
};

struct LabeledDocument {
  Document doc;
  std::string label;
};

/// A labeled document collection. Immutable after construction; category
/// order is fixed at load time and drives all downstream index assignment.
struct Dataset {
  std::vector<LabeledDocument> documents;
  std::vector<std::string> categories;  // ordered, deduplicated

  size_t category_index(const std::string& name) const;  // throws DataError on miss
  size_t docs_in_category(const std::string& name) const;
};

enum class CorpusFormat { jsonl, directory };

/// jsonl: one {"id","text","label"} object per line, categories in
/// first-appearance order. directory: <root>/<category>/<id>.txt,
/// categories in lexicographic order.
Dataset load_corpus(const std::string& path, CorpusFormat format);

/// Writes the canonical jsonl form.
void save_corpus(const Dataset& ds, const std::string& path);

/// Stratified split: per category, ceil(fraction * n_c) documents go to
/// train. Shuffle order is a pure function of seed.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  uint64_t seed);

}  // namespace tct::corpus
