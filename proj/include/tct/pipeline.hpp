#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tct/classifier.hpp"
#include "tct/corpus.hpp"
#include "tct/evaluation.hpp"
#include "tct/preprocess.hpp"
#include "tct/term_selection.hpp"
#include "tct/thesaurus.hpp"
#include "tct/weighting.hpp"

namespace tct::pipeline {

/// Full run configuration. Serialized into every artifact a run produces.
struct RunConfig {
  std::string corpus_path;
  std::string corpus_format = "jsonl";  // jsonl | directory
  std::string thesaurus_path;
  std::string stopwords_path;
  std::string suffix_path;
  std::string stemmer = "none";  // none | light-suffix
  bool strip_digits = false;
  bool symmetrize_thesaurus = false;

  std::string icf_mode = "category-count";  // category-count | doc-ratio
  double selection_threshold = -1.0;        // < 0: default 5/log10(|c|)

  bool semantic = true;
  bool scale_semantic = false;
  bool extend_vectors = true;
  std::string cosine_norm = "sum-of-squares";  // sum-of-squares | as-printed

  double lambda = 1e-4;
  int epochs = 50;
  double learning_rate = 0.1;
  bool ext_init = true;

  double train_fraction = 0.7;
  uint64_t seed = 0;
  int threads = 0;  // 0 = all cores; 1 = serial reference path

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  static RunConfig load_file(const std::string& path);

  preprocess::PreprocessConfig preprocess_config() const;
  weighting::WeightingConfig weighting_config() const;
  term_selection::IcfMode parsed_icf_mode() const;
  classifier::Hyperparams hyperparams() const;
};

/// Everything needed to vectorize and classify new documents: the linear
/// model plus the vectorizer state it was trained with.
struct PipelineModel {
  classifier::LinearModel model;
  term_selection::Vocabulary vocab;
  weighting::CorpusIndex index;
  thesaurus::Thesaurus thesaurus;
  preprocess::PreprocessConfig pcfg;
  weighting::WeightingConfig wcfg;
  std::string run_config_json;
};

struct TrainOutcome {
  PipelineModel pipeline;
  classifier::TrainLog log;
  size_t vocab_corpus_terms = 0;
  size_t vocab_thesaurus_terms = 0;
};

/// preprocess -> select -> index -> (extend) -> vectorize -> train.
TrainOutcome train_pipeline(const corpus::Dataset& train, const RunConfig& cfg);

weighting::FeatureVector vectorize(const PipelineModel& pm, const corpus::Document& doc);

classifier::Prediction predict_doc(const PipelineModel& pm, const corpus::Document& doc);

evaluation::EvalReport evaluate(const PipelineModel& pm, const corpus::Dataset& test,
                                const std::string& config_label);

/// Versioned, checksummed JSON container (format "tct-pipeline").
void save_pipeline(const PipelineModel& pm, const std::string& path);
PipelineModel load_pipeline(const std::string& path);

/// Writes train.jsonl, test.jsonl, thesaurus.tsv and stopwords.txt for the
/// ablation harness: 6 categories x 40 train / 20 test documents, where the
/// category-discriminating half of each test document's marker words is
/// replaced by thesaurus-linked substitutes.
void make_toy_data(const std::string& out_dir, uint64_t seed);

}  // namespace tct::pipeline
