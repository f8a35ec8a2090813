#include "tct/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "tct/error.hpp"

using nlohmann::json;

namespace tct::classifier {

size_t LinearModel::term_index(const std::string& term) const {
  auto it = std::find(vocab_terms.begin(), vocab_terms.end(), term);
  return it == vocab_terms.end() ? npos : static_cast<size_t>(it - vocab_terms.begin());
}

namespace {

struct SparseVec {
  std::vector<std::pair<size_t, double>> entries;
};

double dot(const std::vector<double>& w, const SparseVec& x) {
  double s = 0.0;
  for (const auto& [i, v] : x.entries) s += w[i] * v;
  return s;
}

// Binary hinge-loss SGD with the scale-factor trick: w = scale * u, so the
// L2 shrink step is O(1) per sample.
void train_binary(const std::vector<SparseVec>& xs, const std::vector<int>& ys,
                  const Hyperparams& hp, uint64_t stream_seed,
                  std::vector<double>& w, double& b, std::vector<double>* loss_out) {
  std::vector<double> u = w;
  double scale = 1.0;
  b = 0.0;
  const double eta = hp.learning_rate;
  const double shrink = 1.0 - eta * hp.lambda;

  std::vector<size_t> order(xs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(stream_seed);

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    // Fisher-Yates with explicit draws for cross-platform determinism.
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng() % i]);

    for (size_t k : order) {
      double margin = ys[k] * (scale * dot(u, xs[k]) + b);
      if (margin < 1.0) {
        double step = eta * ys[k] / scale;
        for (const auto& [i, v] : xs[k].entries) u[i] += step * v;
        b += eta * ys[k];
      }
      scale *= shrink;
      if (scale < 1e-9) {
        for (auto& ui : u) ui *= scale;
        scale = 1.0;
      }
    }

    if (!std::isfinite(scale) || !std::isfinite(b))
      throw InternalError("non-finite weight detected during training");

    if (loss_out) {
      double l2 = 0.0;
      for (double ui : u) l2 += ui * ui;
      l2 *= scale * scale;
      double loss = 0.5 * hp.lambda * l2;
      for (size_t k = 0; k < xs.size(); ++k)
        loss += std::max(0.0, 1.0 - ys[k] * (scale * dot(u, xs[k]) + b));
      loss_out->push_back(loss);
    }
  }

  for (size_t i = 0; i < u.size(); ++i) {
    w[i] = scale * u[i];
    if (!std::isfinite(w[i]))
      throw InternalError("non-finite weight detected during training");
  }
}

}  // namespace

LinearModel train(
    const std::vector<std::pair<weighting::FeatureVector, std::string>>& examples,
    const term_selection::Vocabulary& vocab,
    const std::vector<std::string>& categories, const Hyperparams& hp,
    const std::map<std::string, std::map<std::string, double>>& ext_weights,
    int threads, TrainLog* log) {
  if (examples.empty()) throw DataError("no training vectors");
  if (categories.size() < 2) throw DataError("training needs at least 2 categories");
  {
    std::set<std::string> present;
    for (const auto& [v, label] : examples) present.insert(label);
    if (present.size() < 2)
      throw DataError("training vectors cover fewer than 2 categories");
  }

  std::unordered_map<std::string, size_t> term_idx;
  for (size_t i = 0; i < vocab.terms.size(); ++i) term_idx[vocab.terms[i]] = i;

  std::vector<SparseVec> xs(examples.size());
  std::vector<std::string> labels(examples.size());
  for (size_t k = 0; k < examples.size(); ++k) {
    labels[k] = examples[k].second;
    for (const auto& [term, w] : examples[k].first.weights) {
      auto it = term_idx.find(term);
      if (it == term_idx.end()) throw DataError("vector term not in vocabulary: " + term);
      xs[k].entries.emplace_back(it->second, w);
    }
  }

  LinearModel model;
  model.categories = categories;
  model.vocab_terms = vocab.terms;
  model.vocab_origin = vocab.origin;
  model.hp = hp;
  model.weights.assign(categories.size(), std::vector<double>(vocab.terms.size(), 0.0));
  model.biases.assign(categories.size(), 0.0);
  if (log) log->epoch_loss.assign(categories.size(), {});

  auto train_one = [&](size_t c) {
    auto& w = model.weights[c];
    if (hp.ext_init) {
      for (const auto& [term, per_cat] : ext_weights) {
        auto it = term_idx.find(term);
        if (it == term_idx.end()) continue;
        auto wc = per_cat.find(categories[c]);
        if (wc != per_cat.end()) w[it->second] = wc->second;
      }
    }
    std::vector<int> ys(examples.size());
    for (size_t k = 0; k < examples.size(); ++k)
      ys[k] = labels[k] == categories[c] ? 1 : -1;
    uint64_t stream_seed = hp.seed * 0x9E3779B97F4A7C15ULL + c + 1;
    train_binary(xs, ys, hp, stream_seed, w, model.biases[c],
                 log ? &log->epoch_loss[c] : nullptr);
  };

  if (threads == 1) {
    for (size_t c = 0; c < categories.size(); ++c) train_one(c);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (long c = 0; c < static_cast<long>(categories.size()); ++c)
      train_one(static_cast<size_t>(c));
  }
  return model;
}

Prediction predict(const LinearModel& model, const weighting::FeatureVector& v) {
  std::unordered_map<std::string, size_t> term_idx;
  term_idx.reserve(model.vocab_terms.size());
  for (size_t i = 0; i < model.vocab_terms.size(); ++i) term_idx[model.vocab_terms[i]] = i;

  SparseVec x;
  for (const auto& [term, w] : v.weights) {
    auto it = term_idx.find(term);
    if (it != term_idx.end()) x.entries.emplace_back(it->second, w);
  }

  Prediction p;
  p.doc_id = v.doc_id;
  p.oov = x.entries.empty();
  size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < model.categories.size(); ++c) {
    double s = dot(model.weights[c], x) + model.biases[c];
    p.scores[model.categories[c]] = s;
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  p.label = model.categories[best];
  return p;
}

namespace {

constexpr int kModelVersion = 1;

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

void save_model(const LinearModel& model, const std::string& path) {
  json origins = json::object();
  for (const auto& [term, o] : model.vocab_origin)
    origins[term] = o == term_selection::TermOrigin::corpus ? "corpus" : "thesaurus";

  json payload = {
      {"categories", model.categories},
      {"vocab", model.vocab_terms},
      {"origin", origins},
      {"weights", model.weights},
      {"biases", model.biases},
      {"hp",
       {{"lambda", model.hp.lambda},
        {"epochs", model.hp.epochs},
        {"seed", model.hp.seed},
        {"learning_rate", model.hp.learning_rate},
        {"ext_init", model.hp.ext_init}}},
      {"run_config", model.run_config_json},
  };
  std::string payload_str = payload.dump();
  json container = {{"format", "tct-model"},
                    {"version", kModelVersion},
                    {"checksum", fnv1a_hex(payload_str)},
                    {"payload", json::parse(payload_str)}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path);
  out << container.dump(2) << '\n';
}

LinearModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  json container = json::parse(in, nullptr, false);
  if (container.is_discarded() || !container.is_object() ||
      container.value("format", "") != "tct-model")
    throw DataError("corrupted or unrecognized model file: " + path);
  if (container.value("version", -1) != kModelVersion)
    throw DataError("model version mismatch in " + path + " (expected " +
                    std::to_string(kModelVersion) + ")");
  const json& payload = container.at("payload");
  if (fnv1a_hex(payload.dump()) != container.value("checksum", ""))
    throw DataError("model checksum mismatch (corrupted file): " + path);

  LinearModel m;
  m.categories = payload.at("categories").get<std::vector<std::string>>();
  m.vocab_terms = payload.at("vocab").get<std::vector<std::string>>();
  for (const auto& [term, o] : payload.at("origin").items())
    m.vocab_origin[term] = o.get<std::string>() == "corpus"
                               ? term_selection::TermOrigin::corpus
                               : term_selection::TermOrigin::thesaurus;
  m.weights = payload.at("weights").get<std::vector<std::vector<double>>>();
  m.biases = payload.at("biases").get<std::vector<double>>();
  const json& hp = payload.at("hp");
  m.hp.lambda = hp.at("lambda").get<double>();
  m.hp.epochs = hp.at("epochs").get<int>();
  m.hp.seed = hp.at("seed").get<uint64_t>();
  m.hp.learning_rate = hp.at("learning_rate").get<double>();
  m.hp.ext_init = hp.at("ext_init").get<bool>();
  m.run_config_json = payload.at("run_config").get<std::string>();
  if (m.weights.size() != m.categories.size() || m.biases.size() != m.categories.size())
    throw DataError("model file inconsistent: " + path);
  return m;
}

}  // namespace tct::classifier
