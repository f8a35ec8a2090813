#include "tct/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "tct/error.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace tct::pipeline {

namespace {

json config_to_json(const RunConfig& c) {
  return json{{"corpus", c.corpus_path},
              {"corpus_format", c.corpus_format},
              {"thesaurus", c.thesaurus_path},
              {"stopwords", c.stopwords_path},
              {"suffixes", c.suffix_path},
              {"stemmer", c.stemmer},
              {"strip_digits", c.strip_digits},
              {"symmetrize_thesaurus", c.symmetrize_thesaurus},
              {"icf_mode", c.icf_mode},
              {"selection_threshold", c.selection_threshold},
              {"semantic", c.semantic},
              {"scale_semantic", c.scale_semantic},
              {"extend_vectors", c.extend_vectors},
              {"cosine_norm", c.cosine_norm},
              {"lambda", c.lambda},
              {"epochs", c.epochs},
              {"learning_rate", c.learning_rate},
              {"ext_init", c.ext_init},
              {"train_fraction", c.train_fraction},
              {"seed", c.seed},
              {"threads", c.threads}};
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string RunConfig::to_json() const { return config_to_json(*this).dump(2); }

RunConfig RunConfig::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("malformed config JSON");
  RunConfig c;
  maybe(j, "corpus", c.corpus_path);
  maybe(j, "corpus_format", c.corpus_format);
  maybe(j, "thesaurus", c.thesaurus_path);
  maybe(j, "stopwords", c.stopwords_path);
  maybe(j, "suffixes", c.suffix_path);
  maybe(j, "stemmer", c.stemmer);
  maybe(j, "strip_digits", c.strip_digits);
  maybe(j, "symmetrize_thesaurus", c.symmetrize_thesaurus);
  maybe(j, "icf_mode", c.icf_mode);
  maybe(j, "selection_threshold", c.selection_threshold);
  maybe(j, "semantic", c.semantic);
  maybe(j, "scale_semantic", c.scale_semantic);
  maybe(j, "extend_vectors", c.extend_vectors);
  maybe(j, "cosine_norm", c.cosine_norm);
  maybe(j, "lambda", c.lambda);
  maybe(j, "epochs", c.epochs);
  maybe(j, "learning_rate", c.learning_rate);
  maybe(j, "ext_init", c.ext_init);
  maybe(j, "train_fraction", c.train_fraction);
  maybe(j, "seed", c.seed);
  maybe(j, "threads", c.threads);
  return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

preprocess::PreprocessConfig RunConfig::preprocess_config() const {
  preprocess::PreprocessConfig p;
  if (!stopwords_path.empty()) p.stopwords = preprocess::load_stopwords(stopwords_path);
  if (stemmer == "none") {
    p.stemmer = preprocess::Stemmer::none;
  } else if (stemmer == "light-suffix") {
    p.stemmer = preprocess::Stemmer::light_suffix;
    p.suffixes = suffix_path.empty() ? preprocess::default_suffixes()
                                     : preprocess::load_suffixes(suffix_path);
  } else {
    throw ConfigError("unknown stemmer: " + stemmer);
  }
  p.strip_digits = strip_digits;
  return p;
}

weighting::WeightingConfig RunConfig::weighting_config() const {
  weighting::WeightingConfig w;
  w.semantic = semantic;
  w.scale_semantic = scale_semantic;
  w.extend_vectors = extend_vectors;
  if (cosine_norm == "sum-of-squares") {
    w.cosine_norm = weighting::CosineNorm::sum_of_squares;
  } else if (cosine_norm == "as-printed") {
    w.cosine_norm = weighting::CosineNorm::as_printed;
  } else {
    throw ConfigError("unknown cosine_norm: " + cosine_norm);
  }
  return w;
}

term_selection::IcfMode RunConfig::parsed_icf_mode() const {
  if (icf_mode == "category-count") return term_selection::IcfMode::category_count;
  if (icf_mode == "doc-ratio") return term_selection::IcfMode::doc_ratio;
  throw ConfigError("unknown icf_mode: " + icf_mode);
}

classifier::Hyperparams RunConfig::hyperparams() const {
  if (lambda <= 0) throw ConfigError("lambda must be positive");
  if (epochs <= 0) throw ConfigError("epochs must be positive");
  classifier::Hyperparams hp;
  hp.lambda = lambda;
  hp.epochs = epochs;
  hp.seed = seed;
  hp.learning_rate = learning_rate;
  hp.ext_init = ext_init;
  return hp;
}

TrainOutcome train_pipeline(const corpus::Dataset& train, const RunConfig& cfg) {
  if (train.categories.size() < 2)
    throw DataError("training corpus needs at least 2 categories");
  bool needs_thesaurus = cfg.semantic || cfg.extend_vectors;
  if (needs_thesaurus && cfg.thesaurus_path.empty())
    throw ConfigError(
        "a thesaurus is required unless both semantic weighting and vector "
        "extension are disabled");

  TrainOutcome out;
  PipelineModel& pm = out.pipeline;
  pm.run_config_json = cfg.to_json();
  pm.pcfg = cfg.preprocess_config();
  pm.wcfg = cfg.weighting_config();
  if (!cfg.thesaurus_path.empty()) {
    pm.thesaurus = thesaurus::load_thesaurus(cfg.thesaurus_path);
    if (cfg.symmetrize_thesaurus) pm.thesaurus = pm.thesaurus.symmetrized();
  }

  auto stats = term_selection::collect_stats(train, pm.pcfg, cfg.threads);
  pm.vocab = term_selection::select_terms(stats, train.categories, cfg.parsed_icf_mode(),
                                          cfg.selection_threshold);
  out.vocab_corpus_terms = pm.vocab.terms.size();

  std::map<std::string, std::map<std::string, double>> ext_weights;
  if (pm.wcfg.extend_vectors && !pm.thesaurus.empty())
    ext_weights = weighting::extend_vocabulary(pm.vocab, pm.thesaurus, stats,
                                               train.categories);
  out.vocab_thesaurus_terms = pm.vocab.terms.size() - out.vocab_corpus_terms;

  pm.index = weighting::build_index(train, pm.pcfg, cfg.threads);

  auto vectors = weighting::build_feature_vectors(train.documents, pm.vocab, pm.index,
                                                  pm.thesaurus, pm.wcfg, pm.pcfg,
                                                  cfg.threads);
  std::vector<std::pair<weighting::FeatureVector, std::string>> examples;
  examples.reserve(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i)
    examples.emplace_back(std::move(vectors[i]), train.documents[i].label);

  pm.model = classifier::train(examples, pm.vocab, train.categories, cfg.hyperparams(),
                               ext_weights, cfg.threads, &out.log);
  pm.model.run_config_json = pm.run_config_json;
  return out;
}

weighting::FeatureVector vectorize(const PipelineModel& pm, const corpus::Document& doc) {
  return weighting::build_feature_vector(doc, pm.vocab, pm.index, pm.thesaurus, pm.wcfg,
                                         pm.pcfg);
}

classifier::Prediction predict_doc(const PipelineModel& pm, const corpus::Document& doc) {
  return classifier::predict(pm.model, vectorize(pm, doc));
}

evaluation::EvalReport evaluate(const PipelineModel& pm, const corpus::Dataset& test,
                                const std::string& config_label) {
  for (const auto& d : test.documents) {
    bool known = false;
    for (const auto& c : pm.model.categories) known = known || c == d.label;
    if (!known) throw DataError("unknown label in test set: " + d.label);
  }
  std::vector<std::string> gold, predicted;
  std::string test_id;
  for (const auto& d : test.documents) {
    gold.push_back(d.label);
    predicted.push_back(predict_doc(pm, d.doc).label);
    test_id += d.doc.id;
    test_id += '\x1f';
  }
  auto counts = evaluation::confusion(gold, predicted, pm.model.categories);
  return evaluation::macro_report(counts, config_label, test_id);
}

namespace {

constexpr int kPipelineVersion = 1;

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

void save_pipeline(const PipelineModel& pm, const std::string& path) {
  json origins = json::object();
  for (const auto& [term, o] : pm.vocab.origin)
    origins[term] = o == term_selection::TermOrigin::corpus ? "corpus" : "thesaurus";

  json thesaurus_entries = json::object();
  for (const auto& [head, related] : pm.thesaurus.entries())
    thesaurus_entries[head] = related;

  json payload = {
      {"categories", pm.model.categories},
      {"vocab", pm.model.vocab_terms},
      {"origin", origins},
      {"weights", pm.model.weights},
      {"biases", pm.model.biases},
      {"hp",
       {{"lambda", pm.model.hp.lambda},
        {"epochs", pm.model.hp.epochs},
        {"seed", pm.model.hp.seed},
        {"learning_rate", pm.model.hp.learning_rate},
        {"ext_init", pm.model.hp.ext_init}}},
      {"index",
       {{"total_docs", pm.index.total_docs},
        {"doc_freq", pm.index.doc_freq},
        {"doc_lengths", pm.index.doc_lengths}}},
      {"thesaurus", thesaurus_entries},
      {"pcfg",
       {{"stopwords", std::vector<std::string>(pm.pcfg.stopwords.begin(),
                                               pm.pcfg.stopwords.end())},
        {"stemmer", pm.pcfg.stemmer == preprocess::Stemmer::none ? "none" : "light-suffix"},
        {"strip_digits", pm.pcfg.strip_digits},
        {"suffixes", pm.pcfg.suffixes}}},
      {"wcfg",
       {{"semantic", pm.wcfg.semantic},
        {"scale_semantic", pm.wcfg.scale_semantic},
        {"extend_vectors", pm.wcfg.extend_vectors},
        {"cosine_norm", pm.wcfg.cosine_norm == weighting::CosineNorm::sum_of_squares
                            ? "sum-of-squares"
                            : "as-printed"}}},
      {"run_config", pm.run_config_json},
  };
  // Stopword set order is unspecified; sort for byte-stable output.
  std::sort(payload["pcfg"]["stopwords"].begin(), payload["pcfg"]["stopwords"].end());

  std::string payload_str = payload.dump();
  json container = {{"format", "tct-pipeline"},
                    {"version", kPipelineVersion},
                    {"checksum", fnv1a_hex(payload_str)},
                    {"payload", json::parse(payload_str)}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path);
  out << container.dump(2) << '\n';
}

PipelineModel load_pipeline(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  json container = json::parse(in, nullptr, false);
  if (container.is_discarded() || !container.is_object() ||
      container.value("format", "") != "tct-pipeline")
    throw DataError("corrupted or unrecognized model file: " + path);
  if (container.value("version", -1) != kPipelineVersion)
    throw DataError("model version mismatch in " + path);
  const json& payload = container.at("payload");
  if (fnv1a_hex(payload.dump()) != container.value("checksum", ""))
    throw DataError("model checksum mismatch (corrupted file): " + path);

  PipelineModel pm;
  pm.model.categories = payload.at("categories").get<std::vector<std::string>>();
  pm.model.vocab_terms = payload.at("vocab").get<std::vector<std::string>>();
  for (const auto& [term, o] : payload.at("origin").items())
    pm.model.vocab_origin[term] = o.get<std::string>() == "corpus"
                                      ? term_selection::TermOrigin::corpus
                                      : term_selection::TermOrigin::thesaurus;
  pm.model.weights = payload.at("weights").get<std::vector<std::vector<double>>>();
  pm.model.biases = payload.at("biases").get<std::vector<double>>();
  const json& hp = payload.at("hp");
  pm.model.hp.lambda = hp.at("lambda").get<double>();
  pm.model.hp.epochs = hp.at("epochs").get<int>();
  pm.model.hp.seed = hp.at("seed").get<uint64_t>();
  pm.model.hp.learning_rate = hp.at("learning_rate").get<double>();
  pm.model.hp.ext_init = hp.at("ext_init").get<bool>();

  pm.vocab.terms = pm.model.vocab_terms;
  pm.vocab.origin = pm.model.vocab_origin;

  const json& idx = payload.at("index");
  pm.index.total_docs = idx.at("total_docs").get<long>();
  pm.index.doc_freq = idx.at("doc_freq").get<std::map<std::string, long>>();
  pm.index.doc_lengths = idx.at("doc_lengths").get<std::map<std::string, long>>();

  std::map<std::string, std::set<std::string>> entries;
  for (const auto& [head, related] : payload.at("thesaurus").items())
    entries[head] = related.get<std::set<std::string>>();
  pm.thesaurus = thesaurus::Thesaurus(std::move(entries));

  const json& pc = payload.at("pcfg");
  auto stop_list = pc.at("stopwords").get<std::vector<std::string>>();
  pm.pcfg.stopwords = {stop_list.begin(), stop_list.end()};
  pm.pcfg.stemmer = pc.at("stemmer").get<std::string>() == "none"
                        ? preprocess::Stemmer::none
                        : preprocess::Stemmer::light_suffix;
  pm.pcfg.strip_digits = pc.at("strip_digits").get<bool>();
  pm.pcfg.suffixes = pc.at("suffixes").get<std::vector<std::string>>();

  const json& wc = payload.at("wcfg");
  pm.wcfg.semantic = wc.at("semantic").get<bool>();
  pm.wcfg.scale_semantic = wc.at("scale_semantic").get<bool>();
  pm.wcfg.extend_vectors = wc.at("extend_vectors").get<bool>();
  pm.wcfg.cosine_norm = wc.at("cosine_norm").get<std::string>() == "sum-of-squares"
                            ? weighting::CosineNorm::sum_of_squares
                            : weighting::CosineNorm::as_printed;

  pm.run_config_json = payload.at("run_config").get<std::string>();
  pm.model.run_config_json = pm.run_config_json;
  return pm;
}

// ---------------------------------------------------------------------------
// Synthetic ablation corpus.
//
// Six categories in confusable pairs. Each category has 4 unique marker
// words (category-discriminating) and shares 4 pair markers with its
// confuser. Every unique marker has a substitute word that never clears the
// tf-icf threshold in training. Test documents keep the shared markers but
// replace the unique ones with their substitutes, so a plain tf-idf model
// loses exactly the discriminating half of the evidence.
// ---------------------------------------------------------------------------

void make_toy_data(const std::string& out_dir, uint64_t seed) {
  fs::create_directories(out_dir);
  const std::vector<std::string> cats = {"sport",   "economy",  "politics",
                                         "culture", "medicine", "society"};
  const size_t n_cats = cats.size();
  const size_t n_unique = 4, n_shared = 4, n_fillers = 20;
  const size_t train_per_cat = 40, test_per_cat = 20;

  auto uniq_marker = [&](size_t c, size_t k) {
    return cats[c] + "mark" + static_cast<char>('a' + k);
  };
  auto substitute = [&](size_t c, size_t k) {
    return cats[c] + "subst" + static_cast<char>('a' + k);
  };
  auto shared_marker = [&](size_t pair, size_t k) {
    return "pair" + std::to_string(pair) + "common" + static_cast<char>('a' + k);
  };
  auto concept_word = [&](size_t c, size_t j) {
    return cats[c] + "concept" + static_cast<char>('a' + j);
  };
  auto filler = [&](size_t k) { return "filler" + std::to_string(k); };

  // Category-unique words share a rich concept set (3 words), so the semantic
  // weight concentrates on the discriminating evidence. Shared markers get a
  // single semantically poor generic link, keeping their boost small.
  std::ofstream th(fs::path(out_dir) / "thesaurus.tsv", std::ios::binary);
  th << "# synthetic thesaurus for the ablation harness\n";
  for (size_t c = 0; c < n_cats; ++c) {
    for (size_t k = 0; k < n_unique; ++k) {
      std::string concepts;
      for (size_t j = 0; j < 3; ++j) concepts += ',' + concept_word(c, j);
      th << uniq_marker(c, k) << '\t' << substitute(c, k) << concepts << '\n';
      th << substitute(c, k) << '\t' << uniq_marker(c, k) << concepts << '\n';
    }
  }
  for (size_t pair = 0; pair < n_cats / 2; ++pair)
    for (size_t k = 0; k < n_shared; ++k)
      th << shared_marker(pair, k) << '\t' << "pair" << pair << "generic\n";
  th.close();

  std::ofstream sw(fs::path(out_dir) / "stopwords.txt", std::ios::binary);
  sw << "# fillers 0-2 double as stop words in the toy setup\nfiller0\nfiller1\nfiller2\n";
  sw.close();

  std::mt19937_64 rng(seed);
  auto pick = [&](size_t n) { return static_cast<size_t>(rng() % n); };

  corpus::Dataset train_ds, test_ds;
  train_ds.categories = cats;
  test_ds.categories = cats;

  for (size_t c = 0; c < n_cats; ++c) {
    size_t pair = c / 2;
    for (size_t d = 0; d < train_per_cat + test_per_cat; ++d) {
      bool is_test = d >= train_per_cat;
      std::vector<std::string> tokens;
      for (size_t k = 0; k < 8; ++k) tokens.push_back(filler(pick(n_fillers)));
      if (!is_test) {
        for (size_t k = 0; k < 3; ++k) tokens.push_back(uniq_marker(c, pick(n_unique)));
        for (size_t k = 0; k < 3; ++k)
          tokens.push_back(shared_marker(pair, pick(n_shared)));
        // Substitutes occur rarely: enough to give them a document frequency
        // and a per-category frequency profile, never enough to pass term selection.
        if (rng() % 2 == 0) tokens.push_back(substitute(c, pick(n_unique)));
      } else {
        // Half the marker words are the shared (ambiguous) ones; the unique
        // half appears only through thesaurus-linked substitutes.
        size_t a = pick(n_unique);
        for (size_t k = 0; k < 3; ++k) tokens.push_back(substitute(c, (a + k) % n_unique));
        size_t s1 = pick(n_shared), s2 = (s1 + 1 + pick(n_shared - 1)) % n_shared;
        tokens.push_back(shared_marker(pair, s1));
        tokens.push_back(shared_marker(pair, s2));
      }
      for (size_t i = tokens.size(); i > 1; --i) std::swap(tokens[i - 1], tokens[rng() % i]);
      std::string text;
      for (const auto& t : tokens) {
        if (!text.empty()) text += ' ';
        text += t;
      }
      std::string id = cats[c] + (is_test ? "-test-" : "-train-") + std::to_string(d);
      (is_test ? test_ds : train_ds).documents.push_back({{id, text}, cats[c]});
    }
  }

  corpus::save_corpus(train_ds, (fs::path(out_dir) / "train.jsonl").string());
  corpus::save_corpus(test_ds, (fs::path(out_dir) / "test.jsonl").string());
}

}  // namespace tct::pipeline
