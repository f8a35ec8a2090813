#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tct/corpus.hpp"
#include "tct/preprocess.hpp"
#include "tct/term_selection.hpp"
#include "tct/thesaurus.hpp"

namespace tct::weighting {

/// Sparse term -> weight map for one document. No zero-weight entries.
struct FeatureVector {
  std::string doc_id;
  std::map<std::string, double> weights;
};

/// Document-frequency index over the training set.
struct CorpusIndex {
  long total_docs = 0;                         // N
  std::map<std::string, long> doc_freq;        // N(t_i), over all seen terms
  std::map<std::string, long> doc_lengths;     // |d_j|, post-preprocessing
};

enum class CosineNorm { sum_of_squares, as_printed };

struct WeightingConfig {
  bool semantic = true;        // add the thesaurus-overlap weight
  bool scale_semantic = false; // divide by the document's max semantic weight
  bool extend_vectors = true;
  CosineNorm cosine_norm = CosineNorm::sum_of_squares;
};

CorpusIndex build_index(const corpus::Dataset& ds,
                        const preprocess::PreprocessConfig& cfg, int threads = 1);

/// tf * log10(N / df). df must be >= 1 whenever tf >= 1.
double tf_idf(long tf, long total_docs, long doc_freq);

FeatureVector cosine_normalize(const FeatureVector& v,
                               CosineNorm mode = CosineNorm::sum_of_squares);

/// Summed semantic-set overlap of `term` with every other distinct term of
/// the document.
long semantic_weight(const std::string& term, const std::set<std::string>& doc_terms,
                     const thesaurus::Thesaurus& th);

double combined_weight(double semantic, double normalized_tfidf);

/// Per-category weight of a thesaurus-origin feature: freq share across
/// categories, uniform 1/|c| when the feature never occurs in training.
std::map<std::string, double> extension_weight(
    const std::map<std::string, long>& per_category_freq,
    const std::vector<std::string>& categories);

FeatureVector build_feature_vector(const corpus::Document& doc,
                                   const term_selection::Vocabulary& vocab,
                                   const CorpusIndex& index,
                                   const thesaurus::Thesaurus& th,
                                   const WeightingConfig& wcfg,
                                   const preprocess::PreprocessConfig& pcfg);

std::vector<FeatureVector> build_feature_vectors(
    const std::vector<corpus::LabeledDocument>& docs,
    const term_selection::Vocabulary& vocab, const CorpusIndex& index,
    const thesaurus::Thesaurus& th, const WeightingConfig& wcfg,
    const preprocess::PreprocessConfig& pcfg, int threads = 1);

/// Appends, per corpus-origin term, the semantic-set members not already in
/// the vocabulary (lexicographic order, origin=thesaurus). Returns the
/// per-category extension weights keyed by appended term; full_stats supplies
/// their training-set frequencies.
std::map<std::string, std::map<std::string, double>> extend_vocabulary(
    term_selection::Vocabulary& vocab, const thesaurus::Thesaurus& th,
    const std::map<std::string, term_selection::TermStats>& full_stats,
    const std::vector<std::string>& categories);

}  // namespace tct::weighting
