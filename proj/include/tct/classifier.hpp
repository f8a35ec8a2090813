#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tct/term_selection.hpp"
#include "tct/weighting.hpp"

namespace tct::classifier {

struct Hyperparams {
  double lambda = 1e-4;        // L2 regularization
  int epochs = 50;
  uint64_t seed = 0;
  double learning_rate = 0.1;  // constant step size
  bool ext_init = true;        // seed thesaurus-origin weights with their
                               // per-category extension weight
};

/// One-vs-rest linear model. Weight vectors are dense over the (extended)
/// vocabulary, one per category, in category order.
struct LinearModel {
  std::vector<std::string> categories;
  std::vector<std::string> vocab_terms;
  std::map<std::string, term_selection::TermOrigin> vocab_origin;
  std::vector<std::vector<double>> weights;  // [category][term index]
  std::vector<double> biases;
  Hyperparams hp;
  std::string run_config_json;  // config that produced this model

  size_t term_index(const std::string& term) const;  // npos on miss
  static constexpr size_t npos = static_cast<size_t>(-1);
};

struct Prediction {
  std::string doc_id;
  std::string label;
  std::map<std::string, double> scores;
  bool oov = false;  // document had no in-vocabulary terms
};

struct TrainLog {
  // epoch_loss[category][epoch]: regularized hinge loss over the train set.
  std::vector<std::vector<double>> epoch_loss;
};

/// Regularized hinge loss minimized by deterministic stochastic subgradient
/// descent, one binary problem per category. Visit order per epoch is a pure
/// function of (seed, category index). Thesaurus-origin features start at
/// their extension weight (when hp.ext_init), corpus features at 0.
LinearModel train(
    const std::vector<std::pair<weighting::FeatureVector, std::string>>& examples,
    const term_selection::Vocabulary& vocab,
    const std::vector<std::string>& categories, const Hyperparams& hp,
    const std::map<std::string, std::map<std::string, double>>& ext_weights = {},
    int threads = 1, TrainLog* log = nullptr);

/// scores[c] = w_c . v + b_c; label = argmax, ties to the lowest category
/// index. Terms outside the model vocabulary are ignored.
Prediction predict(const LinearModel& model, const weighting::FeatureVector& v);

/// Versioned, checksummed container. Round-trip preserves predictions
/// bit-for-bit.
void save_model(const LinearModel& model, const std::string& path);
LinearModel load_model(const std::string& path);

}  // namespace tct::classifier
